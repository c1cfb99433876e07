"""Print the acceptance report without pytest."""
import os
import runpy
import sys

here = os.path.dirname(os.path.abspath(__file__))
sys.argv = [os.path.join(here, os.pardir, "tests", "test_acceptance.py")] + sys.argv[1:]
runpy.run_path(sys.argv[0], run_name="__main__")
