"""Entry point for the ohzeki_qkp application.

Dependencies:
    - src.cli: CLI application instance
"""

from src.cli import app


def main() -> None:
    """Run the command-line application."""
    app()


if __name__ == "__main__":
    main()
