from fank.scripts.pyramid_session import main, session_lines


def test_session_lines():
    lines = session_lines()
    assert lines[:5] == [
        "isSmooth(C1) = false",
        "isSmooth(C2) = true",
        "isSmooth(C3) = true",
        "isSmooth(C4) = true",
        "isSmooth(C5) = true",
    ]
    assert "C12 = intersection(C1,C2) = <r1,r2>" in lines
    assert "C15 = intersection(C1,C5) = <r3,r4>" in lines
    assert lines.count("isSmooth(C13) = true") == 1
    assert lines[-4:] == [
        "isSmooth(F) = false",
        "isComplete(F) = true",
        "isSimplicial(F) = false",
        "isPolytopal(F) = true",
    ]


def test_main_prints(capsys):
    main()
    out = capsys.readouterr().out
    assert out.splitlines() == session_lines()
