"""One test per acceptance criterion; each prints a PASS/FAIL summary line."""

from gpthide.acceptance import CRITERION_KEYS, DEFAULT_SEED, run_criterion


def _run(number, capsys):
    result = run_criterion(number, seed=DEFAULT_SEED)
    with capsys.disabled():
        print(f"\n{result.summary_line()}")
    failing = [c.to_dict() for c in result.checks if not c.passed]
    assert result.passed, failing
    assert result.key == CRITERION_KEYS[number - 1]


def test_criterion_01_werner_closed_forms(capsys):
    _run(1, capsys)


def test_criterion_02_werner_ratios(capsys):
    _run(2, capsys)


def test_criterion_03_symmetric_catalog(capsys):
    _run(3, capsys)


def test_criterion_04_constant_identities(capsys):
    _run(4, capsys)


def test_criterion_05_spherical_norms(capsys):
    _run(5, capsys)


def test_criterion_06_tensor_norm_laws(capsys):
    _run(6, capsys)


def test_criterion_07_cubic_sandwich(capsys):
    _run(7, capsys)


def test_criterion_08_teleportation(capsys):
    _run(8, capsys)


def test_criterion_09_isotropic(capsys):
    _run(9, capsys)


def test_criterion_10_balanced_ratio(capsys):
    _run(10, capsys)


def test_criterion_11_random_subspace(capsys):
    _run(11, capsys)


def test_criterion_12_sep_norm_ledger(capsys):
    _run(12, capsys)


def test_every_criterion_has_a_test():
    names = [n for n in globals() if n.startswith("test_criterion_")]
    assert len(names) == len(CRITERION_KEYS) == 12


def test_zero_tolerance_breaks_floating_point_checks():
    assert not run_criterion(2, tolerance=0.0).passed
