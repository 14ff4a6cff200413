import numpy as np
import pytest

from tenmom import ConfigError, SolverFailure
from tenmom.cli import RunConfig, build_config, run


def _read_csv(path):
    with open(path) as f:
        header = f.readline().strip().split(",")
        data = np.loadtxt(f, delimiter=",", ndmin=2)
    return header, data


def test_sod_run_writes_csv(tmp_path):
    cfg = RunConfig(problem="sod", nx=100, weno="ao", limiter="adaptive",
                    out_dir=str(tmp_path))
    manifest = run(cfg)
    header, data = _read_csv(tmp_path / "sod_n100.csv")
    assert header == ["x", "rho", "v1", "v2", "p11", "p12", "p22"]
    assert data.shape == (100, 7)
    assert manifest.steps > 0
    assert (tmp_path / "run_manifest.txt").exists()
    text = (tmp_path / "run_manifest.txt").read_text()
    assert "steps = %d" % manifest.steps in text
    assert "sha256.sod_n100.csv" in text


def test_reruns_byte_identical(tmp_path):
    blobs = []
    for sub in ("a", "b"):
        cfg = RunConfig(problem="two-shock", nx=64, weno="z",
                        limiter="adaptive", out_dir=str(tmp_path / sub))
        run(cfg)
        blobs.append((tmp_path / sub / "two-shock_n64.csv").read_bytes())
    assert blobs[0] == blobs[1]


def test_convergence_mode(tmp_path):
    cfg = RunConfig(problem="accuracy1", out_dir=str(tmp_path),
                    convergence=(20, 40))
    run(cfg)
    header, data = _read_csv(tmp_path / "accuracy1_convergence.csv")
    assert header[0] == "N"
    # reference-table shape: error and order per variant
    for tag in ("js", "z", "ao"):
        assert "%s_l1" % tag in header and "%s_l1_order" % tag in header
    assert data.shape[0] == 2
    order = data[1, header.index("z_l1_order")]
    assert order == pytest.approx(5.0, abs=0.35)


def test_potential_override(tmp_path):
    cfg = RunConfig(problem="sod", nx=32, limiter="adaptive",
                    out_dir=str(tmp_path), t_final=0.01,
                    potential="linear-x", potential_params={"slope": 2.0})
    spec = cfg.validate()
    assert spec.potential.name == "linear-x"
    assert spec.potential.params["slope"] == 2.0
    run(cfg)
    with pytest.raises(ConfigError):
        RunConfig(problem="sod", potential="whirlpool").validate()


def test_vtk_output(tmp_path):
    cfg = RunConfig(problem="near-vacuum-2d", nx=24, ny=24, weno="ao",
                    limiter="adaptive", fmt="vtk", out_dir=str(tmp_path),
                    t_final=0.002)
    run(cfg)
    text = (tmp_path / "near-vacuum-2d_n24.vtk").read_text()
    assert text.startswith("# vtk DataFile Version 2.0")
    assert "DIMENSIONS 24 24 1" in text
    assert "SCALARS rho double 1" in text
    assert "SCALARS p_det double 1" in text
    assert text.count("SCALARS") == 8
    assert len(text.split("LOOKUP_TABLE default\n")[1].split()) >= 24 * 24


def test_2d_csv_has_trace_and_det(tmp_path):
    cfg = RunConfig(problem="near-vacuum-2d", nx=16, ny=16, weno="ao",
                    limiter="adaptive", out_dir=str(tmp_path), t_final=0.001)
    run(cfg)
    header, data = _read_csv(tmp_path / "near-vacuum-2d_n16.csv")
    assert header == ["x", "y", "rho", "v1", "v2", "p11", "p12", "p22",
                      "p_trace", "p_det"]
    assert data.shape == (256, 10)
    k = header.index("p_trace")
    assert np.allclose(data[:, k], data[:, 5] + data[:, 7], rtol=1e-12)


def test_cut_output(tmp_path):
    cfg = RunConfig(problem="near-vacuum-2d", nx=16, ny=16, weno="ao",
                    limiter="adaptive", out_dir=str(tmp_path),
                    t_final=0.001, cuts=("y=0", "diag"))
    run(cfg)
    header, data = _read_csv(tmp_path / "near-vacuum-2d_n16_cut_y0.csv")
    assert header[0] == "x"
    assert data.shape == (16, 7)
    header, data = _read_csv(tmp_path / "near-vacuum-2d_n16_cut_diag.csv")
    assert data.shape == (16, 7)


def test_limiter_off_near_vacuum_fails(tmp_path):
    cfg = RunConfig(problem="near-vacuum-1d", nx=100, weno="ao",
                    limiter="off", out_dir=str(tmp_path))
    with pytest.raises(SolverFailure):
        run(cfg)


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(weno="weno9").validate()
    with pytest.raises(ConfigError):
        RunConfig(limiter="maybe").validate()
    with pytest.raises(ConfigError):
        RunConfig(limiter="on", cfl_safe=0.5).validate()
    with pytest.raises(ConfigError):
        RunConfig(problem="sod", ny=32).validate()


def test_config_file_plus_overrides(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text(
        "# sample config\n"
        "problem = sod\n"
        "nx = 50\n"
        "weno = js\n"
        "limiter = adaptive\n"
    )
    cfg = build_config([str(cfg_file), "--weno", "ao", "--nx", "72"])
    assert cfg.problem == "sod"
    assert cfg.weno == "ao"
    assert cfg.nx == 72
    assert cfg.limiter == "adaptive"


def test_config_file_rejects_unknown_keys(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("courant = 0.9\n")
    with pytest.raises(ConfigError):
        build_config([str(cfg_file)])


def test_cli_main_smoke(tmp_path, capsys):
    from tenmom.cli import main
    assert main(["--problem", "sod", "--nx", "40", "--weno", "ao",
                 "--out", str(tmp_path), "--tfinal", "0.01"]) == 0
    out = capsys.readouterr().out
    assert "sod_n40.csv" in out
