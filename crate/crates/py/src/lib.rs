//! Python bindings for the diamond-network energy-per-bit toolkit.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use diamondlab::{bounds, gap, relay, sync};

fn err(e: diamondlab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The four power gains of the diamond network.
#[pyclass(name = "ChannelGains", from_py_object)]
#[derive(Clone)]
struct PyChannelGains {
    inner: diamondlab::ChannelGains,
}

#[pymethods]
impl PyChannelGains {
    #[new]
    fn new(g1: f64, g2: f64, h1: f64, h2: f64) -> PyResult<Self> {
        Ok(Self {
            inner: diamondlab::ChannelGains::new(g1, g2, h1, h2).map_err(err)?,
        })
    }

    #[getter]
    fn g1(&self) -> f64 {
        self.inner.g1
    }

    #[getter]
    fn g2(&self) -> f64 {
        self.inner.g2
    }

    #[getter]
    fn h1(&self) -> f64 {
        self.inner.h1
    }

    #[getter]
    fn h2(&self) -> f64 {
        self.inner.h2
    }

    /// (strong_g, strong_h, weak_g, weak_h, swapped)
    fn canonicalize(&self) -> (f64, f64, f64, f64, bool) {
        let c = self.inner.canonicalize();
        (c.strong_g, c.strong_h, c.weak_g, c.weak_h, c.swapped)
    }

    fn __repr__(&self) -> String {
        format!(
            "ChannelGains(g1={}, g2={}, h1={}, h2={})",
            self.inner.g1, self.inner.g2, self.inner.h1, self.inner.h2
        )
    }
}

/// Noise power and asynchronism exponent.
#[pyclass(name = "AsyncParams", from_py_object)]
#[derive(Clone)]
struct PyAsyncParams {
    inner: diamondlab::AsyncParams,
}

#[pymethods]
impl PyAsyncParams {
    #[new]
    fn new(n0: f64, beta: f64) -> PyResult<Self> {
        Ok(Self {
            inner: diamondlab::AsyncParams::new(n0, beta).map_err(err)?,
        })
    }

    #[getter]
    fn n0(&self) -> f64 {
        self.inner.n0
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma()
    }

    fn __repr__(&self) -> String {
        format!(
            "AsyncParams(n0={}, beta={})",
            self.inner.n0, self.inner.beta
        )
    }
}

/// gamma = 2 * n0 * ln 2
#[pyfunction]
fn gamma_of(n0: f64) -> PyResult<f64> {
    diamondlab::model::gamma_of(n0).map_err(err)
}

/// All upper/lower bounds and the ratio for one parameter point, as a dict.
#[pyfunction]
#[pyo3(signature = (gains, params, ratio_vs_lb_best = false))]
fn bound_report<'py>(
    py: Python<'py>,
    gains: &PyChannelGains,
    params: &PyAsyncParams,
    ratio_vs_lb_best: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let r =
        bounds::BoundReport::compute(&gains.inner, &params.inner, ratio_vs_lb_best).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("ub_relay1", r.ub_relay1)?;
    d.set_item("ub_relay2", r.ub_relay2)?;
    d.set_item("ub_both", r.ub_both)?;
    d.set_item("ub_best", r.ub_best)?;
    d.set_item("lb_cutset", r.lb_cutset)?;
    d.set_item("lb2", r.lb2)?;
    d.set_item("lb_theorem", r.lb_theorem)?;
    d.set_item("lb_best", r.lb_best)?;
    d.set_item("ratio", r.ratio)?;
    Ok(d)
}

/// Relay-usage classification: (kind, inequality, lhs, rhs).
#[pyfunction]
fn classify(
    gains: &PyChannelGains,
    params: &PyAsyncParams,
) -> PyResult<(&'static str, &'static str, f64, f64)> {
    let d = relay::classify(&gains.inner, &params.inner).map_err(err)?;
    Ok((
        d.kind.label(),
        d.certificate.inequality,
        d.certificate.lhs,
        d.certificate.rhs,
    ))
}

/// upper-bound / lower-bound at one point.
#[pyfunction]
#[pyo3(signature = (gains, params, vs_lb_best = false))]
fn ratio(gains: &PyChannelGains, params: &PyAsyncParams, vs_lb_best: bool) -> PyResult<f64> {
    gap::ratio(&gains.inner, &params.inner, vs_lb_best).map_err(err)
}

/// Worst-case ratio over the gain grid {i/R}^4, as a dict.
#[pyfunction]
#[pyo3(signature = (beta, grid_resolution = 30, n0 = 1.0, vs_lb_best = false))]
fn worst_case_ratio<'py>(
    py: Python<'py>,
    beta: f64,
    grid_resolution: u32,
    n0: f64,
    vs_lb_best: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let r = gap::worst_case_ratio(beta, grid_resolution, n0, vs_lb_best).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("beta", r.beta)?;
    d.set_item("worst_ratio", r.worst_ratio)?;
    d.set_item(
        "argmax_gains",
        (
            r.argmax_gains.g1,
            r.argmax_gains.g2,
            r.argmax_gains.h1,
            r.argmax_gains.h2,
        ),
    )?;
    d.set_item("grid_resolution", r.grid_resolution)?;
    d.set_item("envelope_low", r.envelope_low)?;
    d.set_item("envelope_high", r.envelope_high)?;
    Ok(d)
}

fn report_to_dict<'py>(py: Python<'py>, rep: &sync::SyncSimReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let rate = |e: &sync::RateEstimate| (e.rate, e.wilson_low, e.wilson_high, e.count, e.trials);
    d.set_item("window", rep.window)?;
    d.set_item("empirical_miss", rate(&rep.empirical_miss))?;
    d.set_item("empirical_false_alarm", rate(&rep.empirical_false_alarm))?;
    d.set_item(
        "empirical_overall_error",
        rate(&rep.empirical_overall_error),
    )?;
    d.set_item("analytic_miss", rep.analytic_miss)?;
    d.set_item("analytic_false_alarm", rep.analytic_false_alarm)?;
    d.set_item("paper_fa_bound", rep.paper_fa_bound)?;
    d.set_item("sync_energy_per_bit", rep.sync_energy_per_bit)?;
    d.set_item("comm_energy_per_bit_model", rep.comm_energy_per_bit_model)?;
    d.set_item("total_energy_per_bit_model", rep.total_energy_per_bit_model)?;
    d.set_item("rng_algorithm", rep.rng_algorithm)?;
    Ok(d)
}

/// Point-to-point synchronization Monte-Carlo simulation.
#[pyfunction]
#[pyo3(signature = (gain, bits, beta, delta, n0 = 1.0, trials = 100_000, seed = 0, per_slot = false))]
#[allow(clippy::too_many_arguments)]
fn simulate_p2p_sync<'py>(
    py: Python<'py>,
    gain: f64,
    bits: u32,
    beta: f64,
    delta: f64,
    n0: f64,
    trials: u64,
    seed: u64,
    per_slot: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = sync::SyncSimConfig {
        bits,
        beta,
        delta,
        n0,
        mode: sync::SyncMode::P2p { gain },
        trials,
        seed,
        max_log2_window: sync::DEFAULT_MAX_LOG2_WINDOW,
        per_slot,
    };
    let rep = sync::simulate_p2p_sync(&cfg).map_err(err)?;
    report_to_dict(py, &rep)
}

/// Diamond-network synchronization Monte-Carlo simulation.
#[pyfunction]
#[pyo3(signature = (gains, bits, beta, delta, n0 = 1.0, trials = 100_000, seed = 0, per_slot = false))]
#[allow(clippy::too_many_arguments)]
fn simulate_diamond_sync<'py>(
    py: Python<'py>,
    gains: &PyChannelGains,
    bits: u32,
    beta: f64,
    delta: f64,
    n0: f64,
    trials: u64,
    seed: u64,
    per_slot: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = sync::SyncSimConfig {
        bits,
        beta,
        delta,
        n0,
        mode: sync::SyncMode::Diamond { gains: gains.inner },
        trials,
        seed,
        max_log2_window: sync::DEFAULT_MAX_LOG2_WINDOW,
        per_slot,
    };
    let rep = sync::simulate_diamond_sync(&cfg).map_err(err)?;
    report_to_dict(py, &rep)
}

#[pymodule]
fn diamondlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChannelGains>()?;
    m.add_class::<PyAsyncParams>()?;
    m.add_function(wrap_pyfunction!(gamma_of, m)?)?;
    m.add_function(wrap_pyfunction!(bound_report, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(ratio, m)?)?;
    m.add_function(wrap_pyfunction!(worst_case_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_p2p_sync, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_diamond_sync, m)?)?;
    Ok(())
}
