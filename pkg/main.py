from conical_heat_trace.cli import cli


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
