//! Textual names for projections and quadratic modules.

use std::sync::Arc;

use qmod::cexp::{parity_chain, tr_ak, vacuum_evaluation, vacuum_state, BimoduleProjection, Functional};
use qmod::cyclic::{quaternion_sqrt2, CyclicAlgebra};
use qmod::expr::parse_scalar;
use qmod::polyalg::PolyAlgebra;
use qmod::qmod::QuadraticModule;
use qmod::{Error, Result};

pub const PROJECTIONS: &str = "grading, vacuum, rho0, parity[:LEVEL], parity-chain, charge, \
group-average:N, ntrace:N, p-al, tr-field, tr-ak, moments:m0,m1,..., point:x";

pub const MODULES: &str = "posn0, halfline, reals, inf, lambda=K";

fn bad(what: &str, s: &str, known: &str) -> Error {
    Error::Malformed(format!("unknown {what} `{s}`; expected one of: {known}"))
}

fn quaternion() -> Result<Arc<CyclicAlgebra>> {
    quaternion_sqrt2(-1, -1)
}

fn size(arg: Option<&str>, s: &str) -> Result<usize> {
    let n: usize = arg
        .ok_or_else(|| bad("projection", s, PROJECTIONS))?
        .parse()
        .map_err(|_| bad("projection", s, PROJECTIONS))?;
    if n == 0 {
        return Err(Error::Malformed("matrix size must be positive".into()));
    }
    Ok(n)
}

/// Polynomial projections act on `ℝ[x]`; cyclic ones on `(ℚ(√2)/ℚ, σ, −1)`
/// with `e* = −e`.
pub fn projection(s: &str) -> Result<BimoduleProjection> {
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h.trim(), Some(a.trim())),
        None => (s.trim(), None),
    };
    let rx = PolyAlgebra::hermitian(&["x"]);
    match head {
        "grading" => Ok(BimoduleProjection::grading()),
        "vacuum" => Ok(vacuum_state()),
        "rho0" => Ok(vacuum_evaluation()),
        "parity" => {
            let level = arg.map_or(Ok(1), str::parse).map_err(|_| bad("projection", s, PROJECTIONS))?;
            BimoduleProjection::parity(&rx, "x", level)
        }
        "parity-chain" => Ok(parity_chain(&rx, "x")?.1),
        "charge" => BimoduleProjection::charge(&PolyAlgebra::complex_plane("z", "zbar")),
        "group-average" => Ok(BimoduleProjection::group_average(&rx, size(arg, s)?)),
        "ntrace" => Ok(BimoduleProjection::ntrace_matrix(&rx, size(arg, s)?)),
        "p-al" => Ok(BimoduleProjection::p_al(&quaternion()?)),
        "tr-field" => Ok(BimoduleProjection::tr_field(quaternion()?.field())),
        "tr-ak" => Ok(tr_ak(&quaternion()?)),
        "moments" | "point" => {
            let vals = arg
                .ok_or_else(|| bad("projection", s, PROJECTIONS))?
                .split(',')
                .map(|v| parse_scalar(v.trim()))
                .collect::<Result<Vec<_>>>()?;
            let phi = if head == "moments" {
                Functional::Moments(vals)
            } else {
                Functional::Point(vals)
            };
            BimoduleProjection::functional(&rx, phi)
        }
        _ => Err(bad("projection", s, PROJECTIONS)),
    }
}

pub fn module(s: &str) -> Result<QuadraticModule> {
    let t = s.trim();
    match t {
        "posn0" => Ok(QuadraticModule::PosN0),
        "halfline" => Ok(QuadraticModule::PosHalfline),
        "reals" => Ok(QuadraticModule::PosR),
        "inf" | "N_inf" => Ok(QuadraticModule::LeadingCoeff),
        _ => {
            let k = t
                .strip_prefix("lambda=")
                .or_else(|| t.strip_prefix("N_"))
                .and_then(|k| k.trim().parse().ok())
                .ok_or_else(|| bad("quadratic module", s, MODULES))?;
            Ok(QuadraticModule::PointEval(k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_projection_parses() {
        for d in [
            "grading", "vacuum", "rho0", "parity", "parity:2", "parity-chain", "charge",
            "group-average:2", "ntrace:3", "p-al", "tr-field", "tr-ak", "moments:1,0,1", "point:1/2",
        ] {
            projection(d).unwrap_or_else(|e| panic!("{d}: {e}"));
        }
        assert!(projection("ntrace:0").is_err());
        assert!(projection("nope").is_err());
    }

    #[test]
    fn modules() {
        assert_eq!(module("lambda=3").unwrap(), QuadraticModule::PointEval(3));
        assert_eq!(module("N_inf").unwrap(), QuadraticModule::LeadingCoeff);
        assert!(module("lambda=-1").is_err());
    }
}
