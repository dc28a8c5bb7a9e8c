//! Single-output Boolean functions as bit-packed truth tables.
//!
//! Bit `i` of the table is `f(x)` where `x_j = (i >> j) & 1`, i.e. `x0` is the
//! least significant index bit. Columns are packed into 64-bit words; for
//! `n < 6` only the low `2^n` bits of the single word are used and the rest
//! stay zero.
//!
//! The canonical text form is the table read as one big hexadecimal number,
//! most significant digit first, so the majority of three inputs is `E8`.
//! A `0b` prefix selects binary digits instead (needed for `n = 1`).

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_INPUTS: usize = 20;

/// Number of 64-bit words in a column over `n` inputs.
pub fn column_words(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Mask of the used bits in every word of a column over `n` inputs.
pub fn column_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruthTable {
    n: usize,
    bits: Vec<u64>,
    weights: Option<Vec<f64>>,
}

impl TruthTable {
    fn check_arity(n: usize) -> Result<()> {
        if n == 0 || n > MAX_INPUTS {
            return Err(Error::invalid(format!(
                "input count must be in 1..={MAX_INPUTS}, got {n}"
            )));
        }
        Ok(())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        Self::check_arity(n)?;
        let mut bits = vec![0u64; column_words(n)];
        for i in 0..(1usize << n) {
            if f(i) {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(TruthTable {
            n,
            bits,
            weights: None,
        })
    }

    /// Builds a table from packed words; bits beyond `2^n` must be zero.
    pub fn from_words(n: usize, bits: Vec<u64>) -> Result<Self> {
        Self::check_arity(n)?;
        if bits.len() != column_words(n) {
            return Err(Error::invalid(format!(
                "expected {} words for {n} inputs, got {}",
                column_words(n),
                bits.len()
            )));
        }
        if bits[0] & !column_mask(n) != 0 {
            return Err(Error::invalid("bits set beyond 2^n"));
        }
        Ok(TruthTable {
            n,
            bits,
            weights: None,
        })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// Majority of an odd number of inputs: 1 iff at least `(n+1)/2` inputs are 1.
    pub fn majority(n: usize) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "majority needs an odd input count, got {n}"
            )));
        }
        let threshold = (n as u32).div_ceil(2);
        Self::from_fn(n, |i| i.count_ones() >= threshold)
    }

    /// Parses the hex (or `0b`-prefixed binary) form for a known input count.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Self::check_arity(n)?;
        let text = text.trim();
        let (digits, radix_bits, offset) = match text.strip_prefix("0b") {
            Some(rest) => (rest, 1usize, 2usize),
            None => {
                let rest = text.strip_prefix("0x").unwrap_or(text);
                (rest, 4usize, text.len() - rest.len())
            }
        };
        let total = 1usize << n;
        if !total.is_multiple_of(radix_bits) || digits.len() != total / radix_bits {
            let want = if total.is_multiple_of(radix_bits) {
                format!("{}", total / radix_bits)
            } else {
                "a binary string".to_string()
            };
            return Err(Error::parse(
                1,
                offset + digits.len().min(total / radix_bits) + 1,
                format!(
                    "expected {want} digits for {n} inputs, got {}",
                    digits.len()
                ),
            ));
        }
        let mut bits = vec![0u64; column_words(n)];
        for (pos, ch) in digits.chars().enumerate() {
            let value = ch.to_digit(1 << radix_bits).ok_or_else(|| {
                Error::parse(1, offset + pos + 1, format!("invalid digit {ch:?}"))
            })?;
            // Leftmost digit carries the highest indices.
            let low = total - (pos + 1) * radix_bits;
            for b in 0..radix_bits {
                if value >> b & 1 == 1 {
                    let i = low + b;
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
        }
        Ok(TruthTable {
            n,
            bits,
            weights: None,
        })
    }

    /// Canonical text: hex for `n >= 2`, `0b` binary for `n = 1`.
    pub fn to_text(&self) -> String {
        let total = self.len();
        if self.n == 1 {
            return format!("0b{}{}", self.bit(1) as u8, self.bit(0) as u8);
        }
        let mut out = String::with_capacity(total / 4);
        for d in (0..total / 4).rev() {
            let mut v = 0u32;
            for b in 0..4 {
                v |= (self.bit(d * 4 + b) as u32) << b;
            }
            out.push(char::from_digit(v, 16).unwrap().to_ascii_uppercase());
        }
        out
    }

    /// Attaches per-input weights; weight 0 marks a don't-care.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.len() {
            return Err(Error::invalid(format!(
                "expected {} weights, got {}",
                self.len(),
                weights.len()
            )));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
        {
            return Err(Error::invalid(format!(
                "weight {i} must be a non-negative number, got {w}"
            )));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of input vectors, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[i])
    }

    pub fn count_ones(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
