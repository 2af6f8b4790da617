import subprocess
import sys

from dgconf import scalars


def test_backend_selected():
    assert scalars.BACKEND in ("gmpy2", "fraction")
    assert scalars.rat("3/4") == scalars.Q(3) / scalars.Q(4)
    assert scalars.rat(-2) == -scalars.ONE - scalars.ONE


def test_fraction_backend_forced():
    code = (
        "from dgconf import scalars; "
        "assert scalars.BACKEND == 'fraction', scalars.BACKEND; "
        "from dgconf.models import conf2_punctured, disk_bundle_algebra; "
        "from dgconf.duality import verify_pd; "
        "from dgconf.algebra import CDGA; "
        "from dgconf.graded import GradedSpace; "
        "from dgconf.scalars import Q; "
        "s4 = CDGA(GradedSpace({0: ['1'], 4: ['x']}), '1', {}, {}); "
        "m = conf2_punctured(verify_pd(s4, 4, {'x': Q(1)})); "
        "assert m.betti(3) == [1, 0, 0, 1]"
    )
    proc = subprocess.run([sys.executable, "-c", code],
                          env={"DGCONF_RATIONAL": "fraction", "PATH": "/usr/bin:/bin"},
                          cwd=str(__import__("pathlib").Path(__file__).parent.parent),
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
