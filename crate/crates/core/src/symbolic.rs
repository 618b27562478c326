//! Shift spaces at finite resolution: words over a small alphabet, cylinders,
//! Bernoulli measures on them, and the concrete measurable models of the
//! shift: the piecewise-linear interval map `E_p` and the two-dimensional
//! baker map `B_p`.
//!
//! Two-sided sequences are represented by a finite window plus an origin
//! offset; the [`SymbolStream`] type extends a sampled sequence lazily on both
//! sides so dynamics can consume as many symbols as they need while staying a
//! pure function of the seed.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::rng::{self, Purpose};

#[derive(Debug, Error, PartialEq)]
pub enum SymbolicError {
    #[error("symbol {symbol} out of range for alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u8, alphabet: u8 },
    #[error("negative shift on a one-sided word")]
    NegativeShiftOneSided,
    #[error("shift by {steps} exceeds stored length {len}")]
    ShiftPastEnd { steps: i64, len: usize },
    #[error("invalid Bernoulli probabilities: {0}")]
    InvalidProbs(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// A finite realized stretch of a symbol sequence.
///
/// One-sided words have `origin_offset == 0` and cover indices `0..len`.
/// Two-sided words cover `origin_offset..origin_offset + len`, which lets the
/// same type hold the negative-index past that pullback constructions and the
/// walk skew products consume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    symbols: Vec<u8>,
    alphabet_size: u8,
    origin_offset: i64,
}

impl Word {
    pub fn one_sided(symbols: Vec<u8>, alphabet_size: u8) -> Result<Self, SymbolicError> {
        Self::two_sided(symbols, alphabet_size, 0)
    }

    pub fn two_sided(
        symbols: Vec<u8>,
        alphabet_size: u8,
        origin_offset: i64,
    ) -> Result<Self, SymbolicError> {
        for &s in &symbols {
            if s >= alphabet_size {
                return Err(SymbolicError::SymbolOutOfRange {
                    symbol: s,
                    alphabet: alphabet_size,
                });
            }
        }
        Ok(Word {
            symbols,
            alphabet_size,
            origin_offset,
        })
    }

    /// Binary word from `-1`/`+1` signs (symbol 1 encodes `+1`).
    pub fn from_signs(signs: &[i8]) -> Self {
        let symbols = signs.iter().map(|&s| u8::from(s > 0)).collect();
        Word {
            symbols,
            alphabet_size: 2,
            origin_offset: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn origin_offset(&self) -> i64 {
        self.origin_offset
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Symbol at sequence index `i` (respecting the origin offset).
    pub fn symbol_at(&self, i: i64) -> Option<u8> {
        let k = i.checked_sub(self.origin_offset)?;
        if k < 0 {
            return None;
        }
        self.symbols.get(k as usize).copied()
    }

    /// Signs `-1`/`+1` for binary words under the convention symbol 1 = `+1`.
    pub fn signs(&self) -> impl Iterator<Item = i8> + '_ {
        self.symbols.iter().map(|&s| if s == 1 { 1 } else { -1 })
    }

    /// The left shift `sigma^steps`. Symbol `i` of the result is symbol
    /// `i + steps` of the input. One-sided words drop their first `steps`
    /// symbols and require `steps >= 0`; two-sided words just move the origin.
    pub fn shifted(&self, steps: i64) -> Result<Word, SymbolicError> {
        if self.origin_offset == 0 && steps != 0 {
            if steps < 0 {
                return Err(SymbolicError::NegativeShiftOneSided);
            }
            if steps as usize > self.symbols.len() {
                return Err(SymbolicError::ShiftPastEnd {
                    steps,
                    len: self.symbols.len(),
                });
            }
            return Ok(Word {
                symbols: self.symbols[steps as usize..].to_vec(),
                alphabet_size: self.alphabet_size,
                origin_offset: 0,
            });
        }
        Ok(Word {
            symbols: self.symbols.clone(),
            alphabet_size: self.alphabet_size,
            origin_offset: self.origin_offset - steps,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A cylinder set: all sequences agreeing with the fixed symbols.
/// Depth equals the number of fixed symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    word: Word,
}

impl Cylinder {
    pub fn new(word: Word) -> Self {
        Cylinder { word }
    }

    pub fn from_symbols(symbols: Vec<u8>, alphabet_size: u8) -> Result<Self, SymbolicError> {
        Ok(Cylinder {
            word: Word::one_sided(symbols, alphabet_size)?,
        })
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Concatenation `C D`.
    pub fn concat(&self, other: &Cylinder) -> Cylinder {
        let mut symbols = self.word.symbols.clone();
        symbols.extend_from_slice(&other.word.symbols);
        Cylinder {
            word: Word {
                symbols,
                alphabet_size: self.word.alphabet_size,
                origin_offset: self.word.origin_offset,
            },
        }
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.word.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// A Bernoulli measure, one probability per alphabet symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliSpec {
    probs: Vec<f64>,
}

impl BernoulliSpec {
    pub fn new(probs: Vec<f64>) -> Result<Self, SymbolicError> {
        if probs.len() < 2 || probs.len() > u8::MAX as usize {
            return Err(SymbolicError::InvalidProbs(format!(
                "need between 2 and 255 symbols, got {}",
                probs.len()
            )));
        }
        for &p in &probs {
            if !(p > 0.0 && p < 1.0) {
                return Err(SymbolicError::InvalidProbs(format!(
                    "probability {p} outside (0,1)"
                )));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(SymbolicError::InvalidProbs(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(BernoulliSpec { probs })
    }

    /// `nu_p`: probability `p` for symbol 0, `1-p` for symbol 1.
    pub fn two(p: f64) -> Result<Self, SymbolicError> {
        Self::new(vec![p, 1.0 - p])
    }

    /// Equal weights on `k` symbols.
    pub fn uniform(k: usize) -> Result<Self, SymbolicError> {
        Self::new(vec![1.0 / k as f64; k])
    }

    /// Sign-stream spec: probability `p` for `+1` (symbol 1).
    pub fn signs(p: f64) -> Result<Self, SymbolicError> {
        Self::new(vec![1.0 - p, p])
    }

    pub fn alphabet_size(&self) -> u8 {
        self.probs.len() as u8
    }

    pub fn prob(&self, symbol: u8) -> f64 {
        self.probs[symbol as usize]
    }

    /// Measure of a cylinder: the product of per-symbol probabilities.
    pub fn cylinder_prob(&self, c: &Cylinder) -> Result<f64, SymbolicError> {
        let mut prod = 1.0;
        for &s in c.word().symbols() {
            if s as usize >= self.probs.len() {
                return Err(SymbolicError::SymbolOutOfRange {
                    symbol: s,
                    alphabet: self.alphabet_size(),
                });
            }
            prod *= self.probs[s as usize];
        }
        Ok(prod)
    }

    pub fn sample_symbol(&self, rng: &mut impl Rng) -> u8 {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (i, &p) in self.probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return i as u8;
            }
        }
        (self.probs.len() - 1) as u8
    }

    /// A length-`n` word sampled i.i.d. from this measure, determined by `seed`.
    pub fn sample_word(&self, n: usize, seed: u64) -> Word {
        let mut rng = rng::derive(seed, Purpose::Sampling, 0);
        let symbols = (0..n).map(|_| self.sample_symbol(&mut rng)).collect();
        Word {
            symbols,
            alphabet_size: self.alphabet_size(),
            origin_offset: 0,
        }
    }
}

/// A lazily extended two-sided symbol sequence. Indices at or above 0 and
/// strictly below 0 are fed by independent substreams of the seed, so the
/// realization is a pure function of `(spec, seed)` regardless of access
/// order.
#[derive(Debug, Clone)]
pub struct SymbolStream {
    spec: BernoulliSpec,
    forward: Vec<u8>,
    backward: Vec<u8>,
    rng_forward: ChaCha8Rng,
    rng_backward: ChaCha8Rng,
}

impl SymbolStream {
    pub fn new(spec: BernoulliSpec, seed: u64, index: u64) -> Self {
        SymbolStream {
            spec,
            forward: Vec::new(),
            backward: Vec::new(),
            rng_forward: rng::derive(seed, Purpose::WordForward, index),
            rng_backward: rng::derive(seed, Purpose::WordBackward, index),
        }
    }

    pub fn get(&mut self, i: i64) -> u8 {
        if i >= 0 {
            let k = i as usize;
            while self.forward.len() <= k {
                let s = self.spec.sample_symbol(&mut self.rng_forward);
                self.forward.push(s);
            }
            self.forward[k]
        } else {
            let k = (-i - 1) as usize;
            while self.backward.len() <= k {
                let s = self.spec.sample_symbol(&mut self.rng_backward);
                self.backward.push(s);
            }
            self.backward[k]
        }
    }

    pub fn sign_at(&mut self, i: i64) -> i8 {
        if self.get(i) == 1 {
            1
        } else {
            -1
        }
    }

    /// The realized window as a concrete [`Word`].
    pub fn realized(&self) -> Word {
        let mut symbols: Vec<u8> = self.backward.iter().rev().copied().collect();
        symbols.extend_from_slice(&self.forward);
        Word {
            symbols,
            alphabet_size: self.spec.alphabet_size(),
            origin_offset: -(self.backward.len() as i64),
        }
    }
}

/// The piecewise-linear model `E_p` of the one-sided shift: `u/p` below `p`,
/// `(u-p)/(1-p)` from `p` on (the boundary takes the second branch).
pub fn ep_apply(p: f64, u: f64) -> Result<f64, SymbolicError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(SymbolicError::InvalidInput(format!("p = {p} outside (0,1)")));
    }
    if !(0.0..=1.0).contains(&u) {
        return Err(SymbolicError::InvalidInput(format!("u = {u} outside [0,1]")));
    }
    let v = if u < p { u / p } else { (u - p) / (1.0 - p) };
    Ok(v.clamp(0.0, 1.0))
}

/// The two-dimensional baker map `B_p` on the unit square; `power = -1`
/// applies the inverse, whose branch is selected by `y < p`.
pub fn baker_apply(p: f64, w: f64, y: f64, power: i8) -> Result<(f64, f64), SymbolicError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(SymbolicError::InvalidInput(format!("p = {p} outside (0,1)")));
    }
    if !(0.0..1.0).contains(&w) || !(0.0..1.0).contains(&y) {
        return Err(SymbolicError::InvalidInput(format!(
            "({w}, {y}) outside the unit square"
        )));
    }
    let out = match power {
        1 => {
            if w < p {
                (w / p, p * y)
            } else {
                ((w - p) / (1.0 - p), (1.0 - p) * y + p)
            }
        }
        -1 => {
            if y < p {
                (p * w, y / p)
            } else {
                ((1.0 - p) * w + p, (y - p) / (1.0 - p))
            }
        }
        _ => {
            return Err(SymbolicError::InvalidInput(format!(
                "power must be +1 or -1, got {power}"
            )))
        }
    };
    // Rounding can push a quotient to 1.0 exactly; keep the half-open square.
    const BELOW_ONE: f64 = 0.999_999_999_999_999_9;
    Ok((out.0.min(BELOW_ONE), out.1.min(BELOW_ONE)))
}

/// First `n` binary digits of `u`'s base-2 expansion.
pub fn binary_encode(u: f64, n: usize) -> Result<Word, SymbolicError> {
    if !(0.0..1.0).contains(&u) {
        return Err(SymbolicError::InvalidInput(format!("u = {u} outside [0,1)")));
    }
    let mut x = u;
    let mut symbols = Vec::with_capacity(n);
    for _ in 0..n {
        x *= 2.0;
        if x >= 1.0 {
            symbols.push(1);
            x -= 1.0;
        } else {
            symbols.push(0);
        }
    }
    Ok(Word {
        symbols,
        alphabet_size: 2,
        origin_offset: 0,
    })
}

/// Left endpoint of the dyadic interval named by a binary word.
pub fn word_to_point(w: &Word) -> f64 {
    let mut acc = 0.0;
    // Horner from the deep end keeps this exact for dyadic values.
    for &s in w.symbols.iter().rev() {
        acc = (acc + s as f64) * 0.5;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn word(symbols: &[u8]) -> Word {
        Word::one_sided(symbols.to_vec(), 2).unwrap()
    }

    #[test]
    fn shift_examples() {
        let w = word(&[0, 1, 1]);
        assert_eq!(w.shifted(1).unwrap(), word(&[1, 1]));
        assert_eq!(w.shifted(0).unwrap(), w);
        let v = word(&[1, 0, 1, 0]);
        assert_eq!(v.shifted(2).unwrap(), word(&[1, 0]));
        assert_eq!(
            v.shifted(-1).unwrap_err(),
            SymbolicError::NegativeShiftOneSided
        );
    }

    #[test]
    fn two_sided_shift_moves_origin() {
        let w = Word::two_sided(vec![1, 0, 1], 2, -1).unwrap();
        let s = w.shifted(1).unwrap();
        // Symbol at index i of the result equals symbol at i+1 of the input.
        assert_eq!(s.symbol_at(-2), w.symbol_at(-1));
        assert_eq!(s.symbol_at(0), w.symbol_at(1));
        assert_eq!(s.origin_offset(), -2);
    }

    #[test]
    fn cylinder_probabilities() {
        let half = BernoulliSpec::two(0.5).unwrap();
        let c = Cylinder::from_symbols(vec![0, 1, 1], 2).unwrap();
        assert_eq!(half.cylinder_prob(&c).unwrap(), 0.125);

        let biased = BernoulliSpec::two(0.7).unwrap();
        let c2 = Cylinder::from_symbols(vec![0, 0, 1], 2).unwrap();
        assert!((biased.cylinder_prob(&c2).unwrap() - 0.147).abs() < 1e-15);

        let empty = Cylinder::from_symbols(vec![], 2).unwrap();
        assert_eq!(biased.cylinder_prob(&empty).unwrap(), 1.0);
    }

    #[test]
    fn cylinder_prob_multiplicative_under_concatenation() {
        let spec = BernoulliSpec::two(0.37).unwrap();
        let mut rng = crate::rng::derive(11, Purpose::Sampling, 5);
        for _ in 0..50 {
            let na = rng.random_range(0..6);
            let nb = rng.random_range(0..6);
            let a: Vec<u8> = (0..na).map(|_| rng.random_range(0..2) as u8).collect();
            let b: Vec<u8> = (0..nb).map(|_| rng.random_range(0..2) as u8).collect();
            let ca = Cylinder::from_symbols(a, 2).unwrap();
            let cb = Cylinder::from_symbols(b, 2).unwrap();
            let joint = spec.cylinder_prob(&ca.concat(&cb)).unwrap();
            let split = spec.cylinder_prob(&ca).unwrap() * spec.cylinder_prob(&cb).unwrap();
            assert!((joint - split).abs() <= 1e-15);
        }
    }

    #[test]
    fn depth_k_cylinders_sum_to_one() {
        for &p in &[0.5, 0.7, 0.9] {
            let spec = BernoulliSpec::two(p).unwrap();
            for k in 1..=8usize {
                let mut total = 0.0;
                for bits in 0..(1u32 << k) {
                    let symbols: Vec<u8> =
                        (0..k).map(|i| ((bits >> i) & 1) as u8).collect();
                    let c = Cylinder::from_symbols(symbols, 2).unwrap();
                    total += spec.cylinder_prob(&c).unwrap();
                }
                assert!((total - 1.0).abs() < 1e-12, "p={p} k={k}: {total}");
            }
        }
    }

    #[test]
    fn sampled_word_frequencies() {
        let spec = BernoulliSpec::two(0.5).unwrap();
        assert!(spec.sample_word(0, 9).is_empty());

        let w = spec.sample_word(100_000, 1);
        let zeros = w.symbols().iter().filter(|&&s| s == 0).count() as f64 / 1e5;
        assert!((0.49..=0.51).contains(&zeros), "freq {zeros}");

        let spec9 = BernoulliSpec::two(0.9).unwrap();
        let w9 = spec9.sample_word(100_000, 2);
        let zeros9 = w9.symbols().iter().filter(|&&s| s == 0).count() as f64 / 1e5;
        assert!((0.897..=0.903).contains(&zeros9), "freq {zeros9}");
    }

    #[test]
    fn ep_examples() {
        assert!((ep_apply(1.0 / 3.0, 0.5).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(ep_apply(0.3, 0.0).unwrap(), 0.0);
        assert!((ep_apply(0.5, 0.3).unwrap() - 0.6).abs() < 1e-15);
        // Boundary u = p takes the second branch.
        assert_eq!(ep_apply(0.25, 0.25).unwrap(), 0.0);
        assert!(ep_apply(1.0, 0.5).is_err());
    }

    #[test]
    fn baker_branches_and_roundtrip() {
        let (w, y) = baker_apply(0.5, 0.25, 0.5, 1).unwrap();
        assert_eq!((w, y), (0.5, 0.25));

        let (w, y) = baker_apply(1.0 / 3.0, 0.5, 0.0, 1).unwrap();
        assert!((w - 0.25).abs() < 1e-15);
        assert!((y - 1.0 / 3.0).abs() < 1e-15);

        let mut rng = crate::rng::derive(3, Purpose::Sampling, 0);
        for _ in 0..10_000 {
            let p: f64 = rng.random_range(0.1..0.9);
            let w0: f64 = rng.random();
            let y0: f64 = rng.random();
            let (w1, y1) = baker_apply(p, w0, y0, -1).unwrap();
            let (w2, y2) = baker_apply(p, w1, y1, 1).unwrap();
            assert!((w2 - w0).abs() < 1e-14 && (y2 - y0).abs() < 1e-14);
        }
    }

    #[test]
    fn baker_preserves_lebesgue_grid() {
        let p = 0.3;
        let n = 1_000_000usize;
        let mut counts = [0u32; 64];
        let mut rng = crate::rng::derive(17, Purpose::Sampling, 1);
        for _ in 0..n {
            let w: f64 = rng.random();
            let y: f64 = rng.random();
            let (a, b) = baker_apply(p, w, y, 1).unwrap();
            let i = ((a * 8.0) as usize).min(7);
            let j = ((b * 8.0) as usize).min(7);
            counts[8 * i + j] += 1;
        }
        let q = 1.0 / 64.0;
        let expect = n as f64 * q;
        let sigma = (n as f64 * q * (1.0 - q)).sqrt();
        for (k, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - expect).abs() <= 4.0 * sigma,
                "cell {k}: {c} vs {expect} (sigma {sigma})"
            );
        }
    }

    #[test]
    fn ep_preserves_lebesgue_grid() {
        let p = 1.0 / 3.0;
        let n = 1_000_000usize;
        let mut counts = [0u32; 16];
        let mut rng = crate::rng::derive(18, Purpose::Sampling, 2);
        for _ in 0..n {
            let u: f64 = rng.random();
            let v = ep_apply(p, u).unwrap();
            counts[((v * 16.0) as usize).min(15)] += 1;
        }
        let q = 1.0 / 16.0;
        let expect = n as f64 * q;
        let sigma = (n as f64 * q * (1.0 - q)).sqrt();
        for (k, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - expect).abs() <= 4.0 * sigma,
                "cell {k}: {c} vs {expect}"
            );
        }
    }

    #[test]
    fn binary_codec_examples() {
        assert_eq!(binary_encode(0.5, 3).unwrap(), word(&[1, 0, 0]));
        assert_eq!(word_to_point(&word(&[0, 1])), 0.25);

        // Semiconjugacy up to truncation: E_{1/2} o decode = decode o shift.
        let w = binary_encode(0.3, 20).unwrap();
        let lhs = ep_apply(0.5, 0.3).unwrap();
        let rhs = word_to_point(&w.shifted(1).unwrap());
        assert!((lhs - rhs).abs() < 2f64.powi(-19));
    }

    #[test]
    fn symbol_stream_is_lazy_and_reproducible() {
        let spec = BernoulliSpec::two(0.5).unwrap();
        let mut s1 = SymbolStream::new(spec.clone(), 7, 0);
        let mut s2 = SymbolStream::new(spec, 7, 0);
        // Access in different orders; realizations must agree.
        let a: Vec<u8> = (-5..5).map(|i| s1.get(i)).collect();
        let b: Vec<u8> = (-5..5).rev().map(|i| s2.get(i)).collect();
        let b: Vec<u8> = b.into_iter().rev().collect();
        assert_eq!(a, b);
        assert_eq!(s1.realized().symbol_at(-3), Some(a[2]));
    }

    #[test]
    fn word_display_is_digit_string() {
        assert_eq!(word(&[1, 0, 1]).to_string(), "101");
        let c = Cylinder::from_symbols(vec![1, 0, 1], 2).unwrap();
        assert_eq!(c.to_string(), "[1,0,1]");
    }
}
