import json

import numpy as np
import pytest

from opshift.config import build_measure, load_config, parse_config
from opshift.errors import ConfigError
from opshift.measure import CircleVerblunsky, JacobiLine, Mixture, PlanarQuadrature, moment


def _cfg(measure, **run):
    return {"schema": 1, "measure": measure, **run}


def test_defaults_and_overrides():
    cfg = parse_config(_cfg({"kind": "disk"}, degree=12, diag=[-1, 0], tol=1e-8))
    assert cfg.degree == 12 and cfg.diag == (-1, 0) and cfg.tol == 1e-8
    assert cfg.window == 25 and cfg.moments == (1, 2, 3, 4)
    m = cfg.measure()
    assert isinstance(m, PlanarQuadrature) and m.degree >= 25 and m.mass == pytest.approx(1)


@pytest.mark.parametrize("doc,kind", [
    ({"kind": "annulus", "r_in": 1, "r_out": 2}, PlanarQuadrature),
    ({"kind": "circle_arc", "weights": [1, 2, 1, 2, 1, 2, 1, 2]}, PlanarQuadrature),
    ({"kind": "circle_arc", "grid": 16}, PlanarQuadrature),
    ({"kind": "jacobi", "family": "free"}, JacobiLine),
    ({"kind": "jacobi", "family": "constant", "a": 0.5, "b": 0.1}, JacobiLine),
    ({"kind": "jacobi", "a": [1, 0.5], "b": [0, 0.2, 0.1]}, JacobiLine),
    ({"kind": "verblunsky", "alpha": {"family": "decay"}}, CircleVerblunsky),
    ({"kind": "verblunsky", "alpha": {"family": "random", "seed": 3}}, CircleVerblunsky),
    ({"kind": "verblunsky", "alpha": [0.1, [0.2, -0.1]]}, CircleVerblunsky),
    ({"kind": "mixture", "parts": [{"weight": 2, "measure": {"kind": "disk"}},
                                   {"measure": {"kind": "circle_arc", "grid": 16}}]}, Mixture),
])
def test_measure_kinds(doc, kind):
    assert isinstance(build_measure(doc, 5), kind)


def test_pushforward_and_atoms():
    doc = {"kind": "circle_arc", "grid": 32, "pushforward": {"map": "joukowski", "c": 1.0},
           "atoms": [[3.0, 0.0, 0.5]]}
    m = build_measure(doc, 5)
    assert isinstance(m, Mixture) and m.approximate
    assert m.mass == pytest.approx(1.5)
    assert moment(m, (2, 0)) == pytest.approx(2 + 0.5 * 9)
    lin = build_measure({"kind": "disk", "pushforward": {"map": "linear", "a": 2.0, "b": [1, 0]}}, 4)
    assert np.max(np.abs(lin.nodes - 1)) <= 2 + 1e-12


@pytest.mark.parametrize("doc,path", [
    ({"measure": {"kind": "disk"}}, "config.schema"),
    ({"schema": 2, "measure": {"kind": "disk"}}, "config.schema"),
    (_cfg({"kind": "disk"}, colour="red"), "config.colour"),
    (_cfg({"kind": "cube"}), "measure.kind"),
    (_cfg({}), "config.measure.kind"),
    (_cfg({"kind": "disk", "radius": "big"}), "measure.radius"),
    (_cfg({"kind": "disk", "radius": 1, "extra": 1}), "measure.extra"),
    (_cfg({"kind": "disk"}, degree=1.5), "config.degree"),
    (_cfg({"kind": "disk"}, diag=[0, "x"]), "config.diag[1]"),
    (_cfg({"kind": "disk"}, tol=-1), "config"),
    (_cfg({"kind": "annulus", "r_in": 2, "r_out": 1}), "measure"),
    (_cfg({"kind": "verblunsky", "alpha": {"family": "constant", "value": 1.5}}), "measure.alpha"),
    (_cfg({"kind": "verblunsky", "alpha": {"family": "bogus"}}), "measure.alpha.family"),
    (_cfg({"kind": "verblunsky", "alpha": [0.1, "x"]}), "measure.alpha[1]"),
    (_cfg({"kind": "mixture", "parts": [{"weight": 1, "measure": {"kind": "nope"}}]}),
     "measure.parts[0].measure.kind"),
    (_cfg({"kind": "disk", "atoms": [[1, 0]]}), "measure.atoms[0]"),
    (_cfg({"kind": "disk", "pushforward": {"map": "spiral"}}), "measure.pushforward.map"),
])
def test_errors_name_the_key(doc, path):
    with pytest.raises(ConfigError) as exc:
        cfg = parse_config(doc)
        cfg.measure()
    assert str(exc.value).startswith(path)


def test_load_config_digest(tmp_path):
    p = tmp_path / "run.json"
    p.write_text(json.dumps(_cfg({"kind": "disk"})))
    a, b = load_config(p), load_config(p)
    assert len(a.digest) == 64 and a.digest == b.digest
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(p)
