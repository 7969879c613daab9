"""Acceptance suite: one test per exit criterion, exact arithmetic throughout.

Shared inputs (the p <= 1000 census sweep and the 100 seed-42 random models)
come from session fixtures in conftest.py.  Each test prints its PASS/FAIL
line so a full run reads as a checklist.

Note on criterion 7: its first clause asserts the factored trace for *every*
seeded random model with trivial level subgroup.  The factorization's
common-term collapse is provable only when all classes of delta_f share the
rational-centralizer size of pi (automatic in the arithmetic setting the
sandbox shadows, not for arbitrary finite models), and the seeded draw does
contain a model outside that regime, so the criterion is expected to fail
there; the failure detail names the model and the obstruction.  The check is
asserted as stated rather than weakened.
"""

from superspecial import acceptance


def _run(result):
    print(f"{'PASS' if result.passed else 'FAIL'} criterion {result.number}: "
          f"{result.name}" + ("" if result.passed else f" -- {result.detail}"))
    assert result.passed, f"criterion {result.number}: {result.detail}"


def test_criterion_1_geometric_identity(censuses_1000):
    _run(acceptance.criterion_1_geometric_identity(censuses_1000))


def test_criterion_2_class_number_oracle(censuses_1000):
    _run(acceptance.criterion_2_class_number_oracle(censuses_1000))


def test_criterion_3_mass_consistency(censuses_1000):
    _run(acceptance.criterion_3_mass_consistency(censuses_1000))


def test_criterion_4_integrality():
    _run(acceptance.criterion_4_integrality())


def test_criterion_5_spot_values():
    # Independent oracles recorded next to each value inside the criterion:
    # H_3(1,5) = 48 * 4/24 = 8 with |GL2(Z/3)| = (9-1)(9-3) = 48;
    # H_3(1,11) = 48 * 10/24 = 20;
    # H'_3(2,2) = 103680/1920 = 54 with gsp_order(2,3) = 2*81*8*80;
    # gsp_order(2,2) = 16*3*15 = 720 = |Sp4(F_2)|, cross-checked by exhaustive
    # enumeration of the symplectic similitude group over Z/2.
    _run(acceptance.criterion_5_spot_values())


def test_criterion_6_trace_equality(seeded_models_100):
    _run(acceptance.criterion_6_trace_equality(seeded_models_100))


def test_criterion_7_factorization(seeded_models_100):
    _run(acceptance.criterion_7_factorization(seeded_models_100, seed=42))


def test_criterion_8_volume_identities():
    _run(acceptance.criterion_8_volume_identities(seed=42))


def test_criterion_9_involution_universality(censuses_1000):
    _run(acceptance.criterion_9_involution_universality(censuses_1000, seed=42))
