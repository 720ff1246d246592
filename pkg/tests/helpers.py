from pathlib import Path

from click.testing import CliRunner, Result
from testfixtures import compare

from autbound.main import cli


def run_cli(*args: str, input: str | None = None, expected_return_code: int = 0) -> Result:
    result = CliRunner().invoke(cli, args, catch_exceptions=False, input=input)
    compare(result.exit_code, expected=expected_return_code, suffix=result.output)
    return result


def write_lines(path: Path, lines: list[str]) -> Path:
    path.write_text(''.join(f'{line}\n' for line in lines))
    return path
