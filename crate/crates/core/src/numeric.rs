//! Small numeric helpers shared across modules: argument-reduced circle
//! trigonometry with exact zeros, unit-interval wrapping, circle distance,
//! quadrature, and a stable quadratic solver for closed-form map inverses.

use std::f64::consts::PI;

/// `sin(2*pi*x)` with exact zeros at every half-integer.
///
/// Plain `(2.0 * PI * x).sin()` returns ~1e-16 garbage at x = 1/2, which would
/// make designed equilibria drift. Reduction is done on x itself (exact float
/// ops) before a single libm call on `[0, pi/2]`.
pub fn sin_two_pi(x: f64) -> f64 {
    let mut r = 2.0 * x.rem_euclid(1.0); // r in [0, 2)
    let mut sign = 1.0;
    if r >= 1.0 {
        r -= 1.0; // exact
        sign = -1.0;
    }
    if r > 0.5 {
        r = 1.0 - r; // exact by Sterbenz
    }
    sign * (PI * r).sin()
}

/// `cos(2*pi*x)` via the quarter-turn identity; exact zeros at odd multiples of 1/4.
pub fn cos_two_pi(x: f64) -> f64 {
    sin_two_pi(x.rem_euclid(1.0) + 0.25)
}

/// Wrap into `[0, 1)`, guarding the `rem_euclid` rounding case that yields 1.0.
pub fn wrap_unit(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Distance on the circle R/Z.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Composite trapezoid rule on [0,1) with `n` panels.
///
/// For smooth 1-periodic integrands this converges spectrally, so it is the
/// workhorse for the hypothesis-gate quadratures.
pub fn periodic_quadrature(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        acc += f(i as f64 / n as f64);
    }
    acc / n as f64
}

/// Composite Simpson rule on [a,b] with `n` panels (n rounded up to even).
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Root of `a x^2 + b x + c = 0` lying in `[lo, hi]`, computed in the
/// cancellation-stable form. Needs a real root; tiny negative discriminants
/// from rounding are clamped to zero.
pub fn quadratic_root_in(a: f64, b: f64, c: f64, lo: f64, hi: f64) -> Option<f64> {
    if a == 0.0 {
        if b == 0.0 {
            return None;
        }
        let r = -c / b;
        return in_range(r, lo, hi);
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc > -1e-12 * b.abs().max(1.0) {
            disc = 0.0;
        } else {
            return None;
        }
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    let r1 = q / a;
    let r2 = if q == 0.0 { r1 } else { c / q };
    in_range(r1, lo, hi).or_else(|| in_range(r2, lo, hi))
}

fn in_range(r: f64, lo: f64, hi: f64) -> Option<f64> {
    // Accept a whisker of rounding slack outside the bracket, then clamp.
    let slack = 1e-12 * (hi - lo).abs().max(1.0);
    if r >= lo - slack && r <= hi + slack {
        Some(r.clamp(lo, hi))
    } else {
        None
    }
}

/// Kahan-compensated accumulator for long quadrature and Birkhoff sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_two_pi_exact_zeros() {
        assert_eq!(sin_two_pi(0.0), 0.0);
        assert_eq!(sin_two_pi(0.5).abs(), 0.0);
        assert_eq!(sin_two_pi(1.0), 0.0);
        assert_eq!(sin_two_pi(-0.5).abs(), 0.0);
        assert_eq!(sin_two_pi(0.25), 1.0);
        assert_eq!(sin_two_pi(0.75), -1.0);
    }

    #[test]
    fn cos_two_pi_values() {
        assert_eq!(cos_two_pi(0.0), 1.0);
        assert_eq!(cos_two_pi(0.25).abs(), 0.0);
        assert_eq!(cos_two_pi(0.5), -1.0);
        assert!((cos_two_pi(1.0 / 3.0) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn quadratic_picks_bracketed_root() {
        // (x - 0.25)(x - 7) = x^2 - 7.25x + 1.75
        let r = quadratic_root_in(1.0, -7.25, 1.75, 0.0, 1.0).unwrap();
        assert!((r - 0.25).abs() < 1e-14);
    }

    #[test]
    fn periodic_quadrature_cosine_is_zero() {
        let v = periodic_quadrature(cos_two_pi, 4096);
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn simpson_exp() {
        let v = simpson(|x| x.exp(), 0.0, 1.0, 128);
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-10);
    }
}
