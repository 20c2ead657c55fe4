"""__main__ cli entrypoint"""
import sys

from .cli import run


def main():
    """Entrypoint for evoclaws"""
    sys.exit(run())


if __name__ == '__main__':
    main()
