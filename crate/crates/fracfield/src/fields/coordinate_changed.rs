//! Coordinate-changed fields: a fixed spatial realization T evaluated at
//! the endpoint of a (time-changed) Brownian excursion,
//! 𝔗_t(m) = T(B^m_{τ(t)}) with τ a subordinator value or an inverse
//! stable first-passage time.
//!
//! Averaging these samples over the Brownian motion and the time change —
//! with the field held fixed — recovers the deterministically evolved
//! field, which is the conditional-expectation identity the acceptance
//! suite checks.

use crate::error::{Error, Result};
use crate::manifold::{sample_brownian_path, BrownianPath, ManifoldPoint, SpectralBackend};
use crate::rng::RngState;
use crate::subordinate::{
    sample_inverse_stable_first_passage, sample_subordinator_path, LaplaceExponent,
};

use super::synthesis::RandomField;

/// The random clock driving the coordinate change.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeChange {
    Subordinator(LaplaceExponent),
    InverseStable { beta: f64 },
}

impl TimeChange {
    pub fn validate(&self) -> Result<()> {
        match self {
            TimeChange::Subordinator(psi) => psi.validate(),
            TimeChange::InverseStable { beta } => {
                if !(*beta > 0.0 && *beta < 1.0) {
                    return Err(Error::parameter(format!(
                        "beta must be in (0,1), got {beta}"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// One coordinate-changed draw with its full simulation record.
#[derive(Debug, Clone)]
pub struct CoordinateChangedSample {
    /// T(B^m_τ), or 0 if the Brownian path was absorbed (Dirichlet case).
    pub value: f64,
    /// The simulated time change τ.
    pub time_change_value: f64,
    /// Endpoint B^m_τ of the Brownian excursion.
    pub endpoint: ManifoldPoint,
    pub endpoint_alive: bool,
    /// The Brownian excursion record.
    pub brownian_path: BrownianPath,
    /// Coarse record of the simulated clock path (subordinator path, or
    /// the stable path driving the first passage).
    pub time_change_path: Vec<(f64, f64)>,
}

/// Draw 𝔗_t(m) for the field realization `field`.
///
/// `steps` controls the clock discretization: subordinator paths take
/// `steps` increments; the inverse-stable clock runs first passage over a
/// stable path with grid t^β/steps. Brownian transitions are exact, so the
/// excursion step count only sets the path-record granularity (and the
/// killing resolution on the interval backend).
pub fn sample_coordinate_changed(
    backend: &dyn SpectralBackend,
    field: &RandomField,
    time_change: &TimeChange,
    m: &ManifoldPoint,
    t: f64,
    steps: usize,
    rng: &mut RngState,
) -> Result<CoordinateChangedSample> {
    time_change.validate()?;
    if field.backend_id() != backend.id() {
        return Err(Error::parameter("field and backend do not match"));
    }
    if !backend.contains(m) {
        return Err(Error::parameter(
            "start point does not belong to the backend",
        ));
    }
    if !(t >= 0.0) {
        return Err(Error::parameter("time must be >= 0"));
    }
    if steps == 0 {
        return Err(Error::parameter("steps must be >= 1"));
    }
    let (tau, clock_path) = if t == 0.0 {
        (0.0, vec![(0.0, 0.0)])
    } else {
        match time_change {
            TimeChange::Subordinator(psi) => {
                let path = sample_subordinator_path(psi, t, steps, rng)?;
                (path.last().expect("nonempty").1, path)
            }
            TimeChange::InverseStable { beta } => {
                let fp = sample_inverse_stable_first_passage(*beta, t, steps, rng)?;
                (fp.value, fp.path)
            }
        }
    };
    if tau == 0.0 {
        return Ok(CoordinateChangedSample {
            value: field.evaluate(backend, m)?.re,
            time_change_value: 0.0,
            endpoint: *m,
            endpoint_alive: true,
            brownian_path: BrownianPath {
                start: *m,
                times: vec![0.0],
                points: vec![*m],
                alive: vec![true],
            },
            time_change_path: clock_path,
        });
    }
    // exact transitions: the step count is pure record granularity on
    // closed backends; killing needs a modest dt on the interval
    let b_steps = if backend.is_closed() {
        8
    } else {
        ((tau / 0.05).ceil() as usize).clamp(8, 100_000)
    };
    let path = sample_brownian_path(backend, m, tau, b_steps, rng)?;
    let (endpoint, alive) = path.endpoint();
    let value = if alive {
        field.evaluate(backend, endpoint)?.re
    } else {
        0.0
    };
    Ok(CoordinateChangedSample {
        value,
        time_change_value: tau,
        endpoint: *endpoint,
        endpoint_alive: alive,
        brownian_path: path,
        time_change_path: clock_path,
    })
}
