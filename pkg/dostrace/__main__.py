"""Main entry point for the dostrace package."""

from .cli import main

if __name__ == "__main__":
    main()
