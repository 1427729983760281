from doubledkh import theories, verify


def test_eta_fault_breaks_d_squared():
    with verify.mutated_eta():
        ok, detail = verify.check_d_squared(count=20)
    assert not ok and detail


def test_eta_fault_is_restored():
    before = {t: dict(v) for t, v in theories._ETA.items()}
    with verify.mutated_eta():
        assert theories._ETA != before
    assert theories._ETA == before
    assert verify.check_d_squared(count=10)[0]


def test_cli_reports_the_fault(capsys):
    from doubledkh.cli import main
    assert main(["verify", "--only", "1", "--inject-fault", "eta"]) == 1
    assert "[FAIL]" in capsys.readouterr().out
