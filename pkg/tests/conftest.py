"""Shared fixtures: the three bundled worked examples.

The mc and wmc instances share one clause set; the pmc instance differs in
its second clause, which contains a variable and its negation and is
therefore satisfied by every assignment.  Expected answers: 22 models,
weighted count 6, projected count 3.
"""

import pytest

EX_MC_TEXT = """\
c six variables, four clauses
c expected model count: 22
p cnf 6 4
-1 -2 0
2 3 -4 0
c a comment between clauses
4 5 0
4 6 0
"""

EX_WMC_TEXT = """\
c same clauses, weights on variables 1 and 4
p wcnf 6 4
w 1 0.4 0
w -1 0.6 0
w 4 0.5 0
w -4 0.5 0
w 5 1.0 0
w -5 1.0 0
-1 -2 0
2 3 -4 0
c a comment between clauses
4 5 0
4 6 0
"""

EX_PMC_TEXT = """\
c projection onto variables 1 and 2
c the second clause is tautological as written
p pcnf 6 4 2
vp 1 2 0
-1 -2 0
2 3 -2 0
c a comment between clauses
4 5 0
4 6 0
"""

EX_MC_COUNT = 22
EX_WMC_COUNT = 6
EX_PMC_COUNT = 3


@pytest.fixture
def ex_mc_text():
    return EX_MC_TEXT


@pytest.fixture
def ex_wmc_text():
    return EX_WMC_TEXT


@pytest.fixture
def ex_pmc_text():
    return EX_PMC_TEXT


@pytest.fixture
def ex_mc_doc():
    from countkit import parse_mc

    return parse_mc(EX_MC_TEXT)


@pytest.fixture
def ex_wmc_doc():
    from countkit import parse_wmc

    return parse_wmc(EX_WMC_TEXT)


@pytest.fixture
def ex_pmc_doc():
    from countkit import parse_pmc

    return parse_pmc(EX_PMC_TEXT)


@pytest.fixture
def ex_mc_file(tmp_path):
    path = tmp_path / "example.mcc2020_cnf"
    path.write_text(EX_MC_TEXT)
    return path


@pytest.fixture
def ex_wmc_file(tmp_path):
    path = tmp_path / "example.mcc2020_wcnf"
    path.write_text(EX_WMC_TEXT)
    return path


@pytest.fixture
def ex_pmc_file(tmp_path):
    path = tmp_path / "example.mcc2020_pcnf"
    path.write_text(EX_PMC_TEXT)
    return path
