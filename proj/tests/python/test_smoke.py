import hkbsim

def test_import():
    assert hkbsim.wrap_phase(0.0) == 0.0
