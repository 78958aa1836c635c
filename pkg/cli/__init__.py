from .commands import build_parser, run
from .output import RunManifest, read_transcript, write_transcript

__all__ = ['build_parser', 'run', 'RunManifest', 'read_transcript', 'write_transcript']
