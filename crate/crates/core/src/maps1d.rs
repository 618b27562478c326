//! Concrete 1-D diffeomorphism families used as fiber maps, each validated at
//! construction: a north-south circle family, the Kan annulus fiber at a
//! frozen base coordinate, the thick attractor/repeller pair, the alternative
//! two-attractor pair, and the push-up/push-down transfer maps.
//!
//! The families are polynomials or sine perturbations with analytic
//! derivatives. Inverses are closed form where the defining equation is
//! quadratic and safeguarded Newton (tolerance 1e-12, bisection fallback)
//! elsewhere; every family is strictly monotone so the bracket [0,1] always
//! contains the preimage.

use std::fmt;

use thiserror::Error;

use crate::numeric::{cos_two_pi, quadratic_root_in, sin_two_pi};

#[derive(Debug, Error)]
pub enum MapError {
    #[error("family validation failed:\n{0}")]
    Validation(ValidationReport),
    #[error("Newton inversion did not converge: residual {residual:.3e} at target {target}")]
    InverseNonConvergence { target: f64, residual: f64 },
    #[error("{0}")]
    InvalidInput(String),
}

/// Parameterized map families. `ThickF0`/`ThickF1` and `AltF0`/`AltF1` are
/// meant to be used as pairs (see [`Map1D::thick_pair`] and
/// [`Map1D::alt_pair`]), which adds the joint derivative-product checks.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `x + a sin(2 pi x)` on the circle; repeller at 0, attractor at 1/2.
    NorthSouth { a: f64 },
    /// `x + c cos(2 pi u) x (1-x)` on [0,1] with the base coordinate frozen.
    KanFiber { u: f64, c: f64 },
    /// `x - c0 x (1-x)`: below the diagonal on (0,1), fixes 0 and 1.
    ThickF0 { c0: f64 },
    /// `x + c1 x (x-l) (x-r) (1-x)`: fixes 0, l, r, 1 with the Fig-1 sign pattern.
    ThickF1 { l: f64, r: f64, c1: f64 },
    /// `x + c0 x (x-m) (1-x)`: fixes 0, m, 1; below diagonal left of m.
    AltF0 { m: f64, c0: f64 },
    /// `x - c1 x (x-l) (x-r)^2 (1-x)`: fixes 0, l, 1 transversally, r tangentially.
    AltF1 { l: f64, r: f64, c1: f64 },
    /// `x + sign * c x (1-x)` transfer map; `sign = -1` is the exact inverse
    /// of `sign = +1`.
    PhiShift { c: f64, sign: i8 },
}

impl Family {
    fn name(&self) -> String {
        match self {
            Family::NorthSouth { a } => format!("NorthSouth(a={a})"),
            Family::KanFiber { u, c } => format!("KanFiber(u={u}, c={c})"),
            Family::ThickF0 { c0 } => format!("ThickF0(c0={c0})"),
            Family::ThickF1 { l, r, c1 } => format!("ThickF1(l={l}, r={r}, c1={c1})"),
            Family::AltF0 { m, c0 } => format!("AltF0(m={m}, c0={c0})"),
            Family::AltF1 { l, r, c1 } => format!("AltF1(l={l}, r={r}, c1={c1})"),
            Family::PhiShift { c, sign } => format!("PhiShift(c={c}, sign={sign})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    UnitInterval,
    Circle,
}

/// One validated constraint: name, outcome, and the witness value that was
/// compared against the constraint's bound.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: f64,
}

/// The full constraint list checked for a family (or a pair).
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub family: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, witness: f64) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            witness,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.family)?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {} (witness {:.6e})",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.witness
            )?;
        }
        Ok(())
    }
}

/// A validated orientation-preserving diffeomorphism of [0,1] or the circle.
#[derive(Debug, Clone)]
pub struct Map1D {
    family: Family,
    domain: Domain,
    report: ValidationReport,
}

const GRID: usize = 10_000;
const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 60;

impl Map1D {
    pub fn north_south(a: f64) -> Result<Self, MapError> {
        Self::build(Family::NorthSouth { a }, Domain::Circle)
    }

    /// Kan's fiber map with the paper's coupling 1/32.
    pub fn kan_fiber(u: f64) -> Result<Self, MapError> {
        Self::kan_fiber_with(u, 1.0 / 32.0)
    }

    pub fn kan_fiber_with(u: f64, c: f64) -> Result<Self, MapError> {
        Self::build(Family::KanFiber { u, c }, Domain::UnitInterval)
    }

    pub fn phi_shift(c: f64, sign: i8) -> Result<Self, MapError> {
        Self::build(Family::PhiShift { c, sign }, Domain::UnitInterval)
    }

    /// The thick attractor/repeller pair (f0, f1), validated jointly.
    pub fn thick_pair(c0: f64, l: f64, r: f64, c1: f64) -> Result<(Self, Self), MapError> {
        let f0 = Self::build(Family::ThickF0 { c0 }, Domain::UnitInterval)?;
        let f1 = Self::build(Family::ThickF1 { l, r, c1 }, Domain::UnitInterval)?;
        let pair = validate_pair(&f0, &f1);
        if !pair.passed() {
            return Err(MapError::Validation(pair));
        }
        Ok((f0, f1))
    }

    /// The alternative two-thick-attractor pair of transfer-composed walks.
    pub fn alt_pair(m: f64, c0: f64, l: f64, r: f64, c1: f64) -> Result<(Self, Self), MapError> {
        let f0 = Self::build(Family::AltF0 { m, c0 }, Domain::UnitInterval)?;
        let f1 = Self::build(Family::AltF1 { l, r, c1 }, Domain::UnitInterval)?;
        let pair = validate_pair(&f0, &f1);
        if !pair.passed() {
            return Err(MapError::Validation(pair));
        }
        Ok((f0, f1))
    }

    fn build(family: Family, domain: Domain) -> Result<Self, MapError> {
        let report = validate_family(&family);
        if !report.passed() {
            return Err(MapError::Validation(report));
        }
        Ok(Map1D {
            family,
            domain,
            report,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// The construction-time validation report (always fully passing).
    pub fn validation(&self) -> &ValidationReport {
        &self.report
    }

    /// Forward evaluation.
    pub fn forward(&self, x: f64) -> f64 {
        match self.family {
            Family::NorthSouth { a } => {
                let y = x + a * sin_two_pi(x);
                if self.domain == Domain::Circle {
                    y.rem_euclid(1.0)
                } else {
                    y
                }
            }
            Family::KanFiber { u, c } => x + c * cos_two_pi(u) * x * (1.0 - x),
            Family::ThickF0 { c0 } => x - c0 * x * (1.0 - x),
            Family::ThickF1 { l, r, c1 } => x + c1 * x * (x - l) * (x - r) * (1.0 - x),
            Family::AltF0 { m, c0 } => x + c0 * x * (x - m) * (1.0 - x),
            Family::AltF1 { l, r, c1 } => {
                let d = x - r;
                x - c1 * x * (x - l) * d * d * (1.0 - x)
            }
            Family::PhiShift { c, sign } => {
                if sign > 0 {
                    x + c * x * (1.0 - x)
                } else {
                    // Exact inverse of x + c x (1-x): c x^2 - (1+c) x + y = 0.
                    quadratic_root_in(c, -(1.0 + c), x, 0.0, 1.0)
                        .expect("validated transfer map has a bracketed inverse")
                }
            }
        }
    }

    /// Inverse evaluation: closed form for quadratic families, safeguarded
    /// Newton elsewhere. Total on validated families.
    pub fn inverse(&self, y: f64) -> f64 {
        match self.family {
            Family::KanFiber { u, c } => {
                let b = c * cos_two_pi(u);
                if b == 0.0 {
                    return y;
                }
                // y = x + b x (1-x)  =>  -b x^2 + (1+b) x - y = 0.
                quadratic_root_in(-b, 1.0 + b, -y, 0.0, 1.0)
                    .expect("validated Kan fiber has a bracketed inverse")
            }
            Family::ThickF0 { c0 } => {
                // y = x - c0 x (1-x)  =>  c0 x^2 + (1-c0) x - y = 0.
                quadratic_root_in(c0, 1.0 - c0, -y, 0.0, 1.0)
                    .expect("validated ThickF0 has a bracketed inverse")
            }
            Family::PhiShift { c, sign } => {
                let flipped = Family::PhiShift { c, sign: -sign };
                Map1D {
                    family: flipped,
                    domain: self.domain,
                    report: ValidationReport {
                        family: String::new(),
                        checks: vec![],
                    },
                }
                .forward(y)
            }
            _ => self.newton_inverse(y),
        }
    }

    /// Spec-facing evaluation: `power = +1` applies the map, `-1` the inverse
    /// with a convergence check.
    pub fn apply(&self, x: f64, power: i8) -> Result<f64, MapError> {
        match power {
            1 => Ok(self.forward(x)),
            -1 => {
                let z = self.inverse(x);
                let residual = (self.forward(z) - x).abs();
                if residual > 1e-9 {
                    return Err(MapError::InverseNonConvergence {
                        target: x,
                        residual,
                    });
                }
                Ok(z)
            }
            _ => Err(MapError::InvalidInput(format!(
                "power must be +1 or -1, got {power}"
            ))),
        }
    }

    /// Analytic derivative; strictly positive on the domain for validated
    /// families.
    pub fn deriv(&self, x: f64) -> f64 {
        match self.family {
            Family::NorthSouth { a } => 1.0 + 2.0 * std::f64::consts::PI * a * cos_two_pi(x),
            Family::KanFiber { u, c } => 1.0 + c * cos_two_pi(u) * (1.0 - 2.0 * x),
            Family::ThickF0 { c0 } => 1.0 - c0 * (1.0 - 2.0 * x),
            Family::ThickF1 { l, r, c1 } => {
                // P = -x^4 + (1+l+r) x^3 - (l+r+lr) x^2 + lr x
                let p_prime = -4.0 * x.powi(3) + 3.0 * (1.0 + l + r) * x * x
                    - 2.0 * (l + r + l * r) * x
                    + l * r;
                1.0 + c1 * p_prime
            }
            Family::AltF0 { m, c0 } => {
                // Q = -x^3 + (1+m) x^2 - m x
                let q_prime = -3.0 * x * x + 2.0 * (1.0 + m) * x - m;
                1.0 + c0 * q_prime
            }
            Family::AltF1 { l, r, c1 } => {
                // R = A(x) (x-r)^2 with A = -x^3 + (1+l) x^2 - l x.
                let a = -x.powi(3) + (1.0 + l) * x * x - l * x;
                let a_prime = -3.0 * x * x + 2.0 * (1.0 + l) * x - l;
                let d = x - r;
                let r_prime = a_prime * d * d + 2.0 * a * d;
                1.0 - c1 * r_prime
            }
            Family::PhiShift { c, sign } => {
                if sign > 0 {
                    1.0 + c * (1.0 - 2.0 * x)
                } else {
                    let pre = self.forward(x); // phi_0^{-1}(x)
                    1.0 / (1.0 + c * (1.0 - 2.0 * pre))
                }
            }
        }
    }

    fn newton_inverse(&self, y: f64) -> f64 {
        // Monotone lift handling for the circle: validated circle families map
        // [0,1] onto [0,1] fixing the endpoints, so the bracket is still [0,1].
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        let mut x = y.clamp(0.0, 1.0);
        for _ in 0..NEWTON_MAX_ITER {
            let fx = self.forward_lift(x);
            let err = fx - y;
            if err.abs() <= NEWTON_TOL {
                return x;
            }
            if err > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.deriv(x);
            let mut next = x - err / d;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            x = next;
        }
        x
    }

    /// Forward map without circle reduction (the lift), used for inversion.
    fn forward_lift(&self, x: f64) -> f64 {
        match self.family {
            Family::NorthSouth { a } => x + a * sin_two_pi(x),
            _ => self.forward(x),
        }
    }
}

/// Per-family constraint validation on a 10^4-point grid: monotonicity, the
/// designated fixed-point set, and the sign pattern between fixed points.
pub fn validate_family(family: &Family) -> ValidationReport {
    let mut rep = ValidationReport {
        family: family.name(),
        checks: Vec::new(),
    };
    let probe = Map1D {
        family: family.clone(),
        domain: Domain::UnitInterval,
        report: ValidationReport {
            family: String::new(),
            checks: vec![],
        },
    };

    match family {
        Family::NorthSouth { a } => {
            let bound = 1.0 / (2.0 * std::f64::consts::PI);
            rep.push(format!("a in (0, 1/(2 pi)): a = {a}"), *a > 0.0 && *a < bound, *a);
            if !(*a > 0.0 && *a < bound) {
                return rep;
            }
            check_monotone(&mut rep, &probe);
            check_fixed_points(&mut rep, &probe, &[0.0, 0.5]);
            rep.push("deriv(0) > 1 (repeller)", probe.deriv(0.0) > 1.0, probe.deriv(0.0));
            rep.push("deriv(1/2) < 1 (attractor)", probe.deriv(0.5) < 1.0, probe.deriv(0.5));
        }
        Family::KanFiber { u: _, c } => {
            rep.push(format!("|c| in (0, 1): c = {c}"), c.abs() > 0.0 && c.abs() < 1.0, *c);
            if !(c.abs() > 0.0 && c.abs() < 1.0) {
                return rep;
            }
            check_monotone(&mut rep, &probe);
            check_fixed_points(&mut rep, &probe, &[0.0, 1.0]);
        }
        Family::ThickF0 { c0 } => {
            rep.push(format!("c0 in (0, 1): c0 = {c0}"), *c0 > 0.0 && *c0 < 1.0, *c0);
            if !(*c0 > 0.0 && *c0 < 1.0) {
                return rep;
            }
            check_monotone(&mut rep, &probe);
            check_fixed_points(&mut rep, &probe, &[0.0, 1.0]);
            check_sign(&mut rep, &probe, 0.0, 1.0, -1.0, "f0 < x on (0,1)");
        }
        Family::ThickF1 { l, r, c1 } => {
            let ordered = 0.0 < *l && *l < *r && *r < 1.0 && *c1 > 0.0;
            rep.push("parameters ordered 0 < l < r < 1, c1 > 0", ordered, *c1);
            if !ordered {
                return rep;
            }
            check_monotone(&mut rep, &probe);
            check_fixed_points(&mut rep, &probe, &[0.0, *l, *r, 1.0]);
            check_sign(&mut rep, &probe, 0.0, *l, 1.0, "f1 > x on (0,l)");
            check_sign(&mut rep, &probe, *l, *r, -1.0, "f1 < x on (l,r)");
            check_sign(&mut rep, &probe, *r, 1.0, 1.0, "f1 > x on (r,1)");
        }
        Family::AltF0 { m, c0 } => {
            let ok = 0.0 < *m && *m < 1.0 && *c0 > 0.0;
            rep.push("parameters 0 < m < 1, c0 > 0", ok, *c0);
            if !ok {
                return rep;
            }
            check_monotone(&mut rep, &probe);
            check_fixed_points(&mut rep, &probe, &[0.0, *m, 1.0]);
            check_sign(&mut rep, &probe, 0.0, *m, -1.0, "f0 < x on (0,m)");
            check_sign(&mut rep, &probe, *m, 1.0, 1.0, "f0 > x on (m,1)");
        }
        Family::AltF1 { l, r, c1 } => {
            let ordered = 0.0 < *l && *l < *r && *r < 1.0 && *c1 > 0.0;
            rep.push("parameters ordered 0 < l < r < 1, c1 > 0", ordered, *c1);
            if !ordered {
                return rep;
            }
            check_monotone(&mut rep, &probe);
            check_fixed_points(&mut rep, &probe, &[0.0, *l, 1.0]);
            rep.push(
                "r fixed tangentially",
                (probe.forward(*r) - r).abs() < 1e-12 && (probe.deriv(*r) - 1.0).abs() < 1e-9,
                probe.deriv(*r),
            );
            check_sign(&mut rep, &probe, 0.0, *l, 1.0, "f1 > x on (0,l)");
            check_sign(&mut rep, &probe, *l, *r, -1.0, "f1 < x on (l,r)");
            check_sign(&mut rep, &probe, *r, 1.0, -1.0, "f1 < x on (r,1)");
        }
        Family::PhiShift { c, sign } => {
            let ok = *c > 0.0 && *c < 1.0 && (*sign == 1 || *sign == -1);
            rep.push(format!("c in (0,1), sign = +/-1: c = {c}"), ok, *c);
            if !ok {
                return rep;
            }
            check_monotone(&mut rep, &probe);
            check_fixed_points(&mut rep, &probe, &[0.0, 1.0]);
        }
    }
    rep
}

/// Joint checks for a thick or alternative pair: derivative products at the
/// endpoints and forward-invariance of the trapping intervals, verified by
/// endpoint images.
pub fn validate_pair(f0: &Map1D, f1: &Map1D) -> ValidationReport {
    let mut rep = ValidationReport {
        family: format!("pair({}, {})", f0.family.name(), f1.family.name()),
        checks: Vec::new(),
    };
    let prod0 = f0.deriv(0.0) * f1.deriv(0.0);
    let prod1 = f0.deriv(1.0) * f1.deriv(1.0);
    match (&f0.family, &f1.family) {
        (Family::ThickF0 { .. }, Family::ThickF1 { l, r, .. }) => {
            rep.push("f0'(0) f1'(0) > 1", prod0 > 1.0, prod0);
            // Equivalent to the inverse-map expansion condition at 1.
            rep.push("f0'(1) f1'(1) < 1", prod1 < 1.0, prod1);
            let il_ok = f0.forward(*l) <= *l && f1.forward(*l) <= *l + 1e-12;
            rep.push("I_l = [0,l] forward invariant", il_ok, f0.forward(*l));
            let ir_ok = f0.inverse(*r) >= *r && f1.inverse(*r) >= *r - 1e-12;
            rep.push("I_r = [r,1] backward invariant", ir_ok, f0.inverse(*r));
        }
        (Family::AltF0 { .. }, Family::AltF1 { l, r, .. }) => {
            rep.push("f0'(0) f1'(0) > 1", prod0 > 1.0, prod0);
            rep.push("f0'(1) f1'(1) > 1", prod1 > 1.0, prod1);
            let il_ok = f0.forward(*l) <= *l && f1.forward(*l) <= *l + 1e-12;
            rep.push("I_l = [0,l] forward invariant", il_ok, f0.forward(*l));
            let ir_ok = f0.forward(*r) >= *r - 1e-12 && f1.forward(*r) >= *r - 1e-12;
            rep.push("I_r = [r,1] forward invariant", ir_ok, f1.forward(*r));
        }
        _ => {
            rep.push("recognized pair of families", false, 0.0);
        }
    }
    rep
}

fn check_monotone(rep: &mut ValidationReport, map: &Map1D) {
    let mut min_deriv = f64::INFINITY;
    for i in 0..=GRID {
        let x = i as f64 / GRID as f64;
        min_deriv = min_deriv.min(map.deriv(x));
    }
    rep.push("derivative strictly positive", min_deriv > 0.0, min_deriv);
}

fn check_fixed_points(rep: &mut ValidationReport, map: &Map1D, fixed: &[f64]) {
    for &p in fixed {
        let gap = (map.forward_lift(p) - p).abs();
        rep.push(format!("fixes x = {p}"), gap <= 1e-12, gap);
    }
    // No other fixed points: away from the designated ones the displacement
    // must be bounded away from zero on the grid.
    let mut violation = f64::INFINITY;
    let mut ok = true;
    for i in 0..=GRID {
        let x = i as f64 / GRID as f64;
        let near = fixed.iter().any(|&p| (x - p).abs() < 1e-3);
        if near {
            continue;
        }
        let disp = (map.forward_lift(x) - x).abs();
        if disp < 1e-9 {
            ok = false;
            violation = violation.min(disp);
        }
    }
    rep.push(
        "no undesignated fixed points on grid",
        ok,
        if ok { 0.0 } else { violation },
    );
}

fn check_sign(rep: &mut ValidationReport, map: &Map1D, lo: f64, hi: f64, sign: f64, name: &str) {
    let mut ok = true;
    let mut worst = 0.0;
    for i in 1..GRID {
        let x = lo + (hi - lo) * i as f64 / GRID as f64;
        if (x - lo).abs() < 1e-4 || (hi - x).abs() < 1e-4 {
            continue;
        }
        let disp = map.forward_lift(x) - x;
        if disp * sign <= 0.0 {
            ok = false;
            worst = disp;
            break;
        }
    }
    rep.push(name, ok, worst);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn north_south_values() {
        let f = Map1D::north_south(0.1).unwrap();
        assert_eq!(f.apply(0.0, 1).unwrap(), 0.0);
        assert!((f.apply(0.25, 1).unwrap() - 0.35).abs() < 1e-15);
        assert!((f.deriv(0.0) - (1.0 + 0.2 * std::f64::consts::PI)).abs() < 1e-12);
        assert!(f.deriv(0.0) > 1.0 && f.deriv(0.5) < 1.0);
        // p_S is exactly fixed.
        assert_eq!(f.apply(0.5, 1).unwrap(), 0.5);
    }

    #[test]
    fn north_south_rejects_nonmonotone() {
        assert!(Map1D::north_south(1.0).is_err());
        assert!(Map1D::north_south(0.2).is_err()); // 0.2 > 1/(2 pi)
    }

    #[test]
    fn thick_pair_defaults() {
        let (f0, f1) = Map1D::thick_pair(0.2, 0.3, 0.7, 1.5).unwrap();
        assert!((f1.apply(0.3, 1).unwrap() - 0.3).abs() < 1e-15);
        assert!((f0.deriv(0.0) - 0.8).abs() < 1e-15);

        let prod0 = f0.deriv(0.0) * f1.deriv(0.0);
        assert!((prod0 - 0.8 * (1.0 + 1.5 * 0.3 * 0.7)).abs() < 1e-12);
        assert!(prod0 > 1.0);
        let prod1 = f0.deriv(1.0) * f1.deriv(1.0);
        assert!((prod1 - 1.2 * (1.0 - 1.5 * 0.21)).abs() < 1e-12);
        assert!(prod1 < 1.0);
    }

    #[test]
    fn thick_pair_rejects_bad_c0() {
        // (1 - 0.9) * 1.315 < 1 violates the derivative-product condition at 0.
        let err = Map1D::thick_pair(0.9, 0.3, 0.7, 1.5).unwrap_err();
        match err {
            MapError::Validation(rep) => {
                let fail = rep.first_failure().unwrap();
                assert!(fail.name.contains("f0'(0) f1'(0)"), "{}", fail.name);
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn alt_pair_defaults() {
        let (f0, f1) = Map1D::alt_pair(0.5, 0.25, 0.3, 0.7, 3.0).unwrap();
        assert!((f0.deriv(0.0) - 0.875).abs() < 1e-12);
        assert!((f1.deriv(0.0) - 1.441).abs() < 1e-12);
        assert!((f1.deriv(1.0) - 1.189).abs() < 1e-12);
        assert!(f0.deriv(0.0) * f1.deriv(0.0) > 1.0);
        assert!(f0.deriv(1.0) * f1.deriv(1.0) > 1.0);
    }

    #[test]
    fn phi_shift_is_exact_inverse_pair() {
        let up = Map1D::phi_shift(0.5, 1).unwrap();
        let down = Map1D::phi_shift(0.5, -1).unwrap();
        assert!(up.deriv(0.0).is_finite() && up.deriv(0.0) > 0.0);
        for &x in &[0.0, 0.1, 0.37, 0.5, 0.93, 1.0] {
            let y = up.forward(x);
            assert!((down.forward(y) - x).abs() < 1e-14);
        }
    }

    #[test]
    fn inverse_roundtrip_all_families() {
        let maps = vec![
            Map1D::north_south(0.1).unwrap(),
            Map1D::kan_fiber(0.2).unwrap(),
            Map1D::phi_shift(0.5, 1).unwrap(),
            Map1D::phi_shift(0.5, -1).unwrap(),
        ];
        let (t0, t1) = Map1D::thick_pair(0.2, 0.3, 0.7, 1.5).unwrap();
        let (a0, a1) = Map1D::alt_pair(0.5, 0.25, 0.3, 0.7, 3.0).unwrap();
        let all: Vec<Map1D> = maps.into_iter().chain([t0, t1, a0, a1]).collect();

        let mut rng = crate::rng::derive(5, crate::rng::Purpose::Sampling, 3);
        for m in &all {
            for _ in 0..1000 {
                let x: f64 = rng.random();
                let y = m.apply(x, 1).unwrap();
                let back = m.apply(y, -1).unwrap();
                assert!(
                    (back - x).abs() < 1e-10,
                    "{}: x={x} back={back}",
                    m.family().name()
                );
            }
        }
    }

    #[test]
    fn kan_fiber_fixes_boundaries_for_every_u() {
        for i in 0..32 {
            let u = i as f64 / 32.0;
            let f = Map1D::kan_fiber(u).unwrap();
            assert_eq!(f.forward(0.0), 0.0);
            assert_eq!(f.forward(1.0), 1.0);
        }
    }

    #[test]
    fn trapping_intervals_by_endpoint_images() {
        let (f0, f1) = Map1D::thick_pair(0.2, 0.3, 0.7, 1.5).unwrap();
        // I_l = [0, l] maps into itself under both maps.
        assert!(f0.forward(0.3) <= 0.3 && f0.forward(0.0) >= 0.0);
        assert!(f1.forward(0.3) <= 0.3 + 1e-15 && f1.forward(0.0) >= 0.0);
        // I_r = [r, 1] maps into itself under both inverses.
        assert!(f0.inverse(0.7) >= 0.7 && f0.inverse(1.0) <= 1.0);
        assert!(f1.inverse(0.7) >= 0.7 - 1e-15 && f1.inverse(1.0) <= 1.0);
    }

    #[test]
    fn validation_report_lists_witnesses() {
        let rep = validate_family(&Family::NorthSouth { a: 0.1 });
        assert!(rep.passed());
        assert!(rep.checks.len() >= 4);
        let display = rep.to_string();
        assert!(display.contains("ok"));
    }
}
