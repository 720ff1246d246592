from pathlib import Path

import pytest
from testfixtures import compare

from .helpers import run_cli, write_lines

QUICK = ('verify', '--nmax', '4', '--random-count', '2')


class TestVerify:
    def test_passes(self) -> None:
        result = run_cli(*QUICK)
        assert 'n = 4: 6 connected graphs' in result.stdout
        for name in ('soundness', 'exactness', 'oracle', 'theorem1', 'greedy', 'corpus'):
            assert name in result.stdout
        assert 'fail' not in result.stdout
        assert 'improvement: thm3_orbit < eq1_nashwilliams on ' in result.stdout
        assert 'improvement: thm3_orbit < eq2_tree_product on ' in result.stdout
        assert ' of 10 graphs' in result.stdout
        assert 'counterexample' not in result.stdout

    def test_graph_counts(self) -> None:
        result = run_cli('verify', '--nmax', '5', '--random-count', '0', '-s', 'corpus')
        for line in (
            'n = 1: 1 connected graphs',
            'n = 2: 1 connected graphs',
            'n = 3: 2 connected graphs',
            'n = 4: 6 connected graphs',
            'n = 5: 21 connected graphs',
        ):
            assert line in result.stdout

    def test_selected_suites(self) -> None:
        result = run_cli(*QUICK, '-s', 'orbits', '-s', 'corpus')
        assert 'orbits' in result.stdout
        assert 'soundness' not in result.stdout

    def test_deterministic(self) -> None:
        compare(run_cli(*QUICK).stdout, expected=run_cli(*QUICK).stdout)

    @pytest.mark.usefixtures('halved_eq1')
    def test_counterexample(self) -> None:
        result = run_cli(*QUICK, '-s', 'soundness', '-s', 'orbits', expected_return_code=1)
        assert 'soundness: counterexample @' in result.stdout
        assert 'eq1_nashwilliams is below aut=1' in result.stdout
        assert 'orbits: counterexample' not in result.stdout
        compare(result.stderr, expected='Error: 1 suite(s) found violations\n')

    def test_external_corpus(self, tmp_path: Path) -> None:
        path = write_lines(tmp_path / 'graphs.g6', ['C~', 'C`', 'Dhc'])
        result = run_cli('verify', '--corpus', str(path), '-s', 'soundness', '-s', 'orbits')
        assert '2 connected graphs read from 1 file(s)' in result.stdout

    def test_malformed_corpus(self, tmp_path: Path) -> None:
        path = write_lines(tmp_path / 'graphs.g6', ['C ~'])
        result = run_cli('verify', '--corpus', str(path), expected_return_code=2)
        compare(result.stderr, expected="Error: invalid graph6 byte ' ' (at offset 1)\n")

    def test_nmax_too_large(self) -> None:
        run_cli('verify', '--nmax', '8', expected_return_code=2)

    def test_unknown_suite(self) -> None:
        run_cli('verify', '-s', 'everything', expected_return_code=2)
