import sys
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from latsheaf.corpus import blo_corpus, boolean_corpus, lattices_up_to  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

LATTICES = lattices_up_to(7)
DISTRIBUTIVE = lattices_up_to(8, distributive=True)
SMALL_BLOS = blo_corpus(5, 2)
BOOLEAN_BLOS = boolean_corpus(8, 2)

lattices = st.sampled_from(LATTICES)
distributive_lattices = st.sampled_from(DISTRIBUTIVE)
small_blos = st.sampled_from(SMALL_BLOS)
boolean_blos = st.sampled_from(BOOLEAN_BLOS)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
