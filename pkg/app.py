"""
Command-line entry point
"""
import sys

from cli.commands import run_cli

if __name__ == "__main__":
    sys.exit(run_cli(sys.argv[1:]))
