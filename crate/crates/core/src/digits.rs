//! Base-B digit machinery: expansions, block occurrence counts, lengths and
//! the ε weight.

use std::fmt;

use crate::error::{Error, Result};

fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        return Err(Error::InvalidArgument(format!("base must be at least 2, got {base}")));
    }
    Ok(())
}

/// A non-empty word over the alphabet `{0, …, B−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordSpec {
    base: u32,
    letters: Vec<u32>,
    value: u64,
}

impl WordSpec {
    pub fn new(base: u32, letters: Vec<u32>) -> Result<Self> {
        check_base(base)?;
        if letters.is_empty() {
            return Err(Error::InvalidArgument("word must have at least one letter".into()));
        }
        let mut value: u64 = 0;
        for &d in &letters {
            if d >= base {
                return Err(Error::InvalidArgument(format!(
                    "letter {d} is not a base-{base} digit"
                )));
            }
            value = value
                .checked_mul(base as u64)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| Error::InvalidArgument("word value overflows 64 bits".into()))?;
        }
        // B^{|ω|} must also fit, since it becomes the series parameter a
        (base as u64)
            .checked_pow(letters.len() as u32)
            .ok_or_else(|| Error::InvalidArgument("word too long for base".into()))?;
        Ok(Self { base, letters, value })
    }

    /// Parses letters written as digits `0-9` then `a-z`, e.g. `"011"`.
    pub fn parse(word: &str, base: u32) -> Result<Self> {
        let letters = word
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad letter {c:?} in word {word:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, letters)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// `|ω|`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `v_B(ω)`, the word read as a base-B numeral.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Whether occurrences are counted against a zero-padded expansion.
    pub fn needs_padding(&self) -> bool {
        self.letters[0] == 0 && self.value != 0
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.letters {
            write!(f, "{}", char::from_digit(d, 36).unwrap_or('?'))?;
        }
        Ok(())
    }
}

/// Digits of `n` in base `base`, most significant first; empty for zero.
pub fn expand(mut n: u64, base: u32) -> Vec<u32> {
    assert!(base >= 2, "base must be at least 2");
    let b = base as u64;
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % b) as u32);
        n /= b;
    }
    out.reverse();
    out
}

fn count_in(haystack: &[u32], needle: &[u32]) -> u64 {
    if haystack.len() < needle.len() {
        return 0;
    }
    haystack.windows(needle.len()).filter(|w| *w == needle).count() as u64
}

/// `N_{ω,B}(n)`: overlapping occurrences of `ω` in the expansion of `n`.
///
/// Words starting with 0 but of non-zero value are matched against the
/// expansion preceded by `|ω|−1` zeros; zero-valued words use the shortest
/// expansion. `N_{ω,B}(0) = 0`.
pub fn count_occurrences(word: &WordSpec, n: u64) -> u64 {
    let pad = if word.needs_padding() { word.len() - 1 } else { 0 };
    count_occurrences_padded(word, n, pad)
}

/// Occurrences of `ω` in the expansion of `n` preceded by `pad` zeros.
pub fn count_occurrences_padded(word: &WordSpec, n: u64, pad: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut digits = vec![0; pad];
    digits.extend(expand(n, word.base));
    count_in(&digits, &word.letters)
}

/// `L_B(k)`, the number of base-B digits of `k` (0 for `k = 0`).
pub fn length(mut k: u64, base: u32) -> u32 {
    debug_assert!(base >= 2);
    let b = base as u64;
    let mut len = 0;
    while k > 0 {
        k /= b;
        len += 1;
    }
    len
}

/// `ε(n)`: `B−1` when `B | n`, else `−1`.
pub fn epsilon(n: u64, base: u32) -> i64 {
    if n.is_multiple_of(base as u64) {
        base as i64 - 1
    } else {
        -1
    }
}

/// Numbers of odd and even digits in the shortest expansion of `n`.
pub fn parity_counts(n: u64, base: u32) -> Result<(u32, u32)> {
    check_base(base)?;
    if !base.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "parity counts need an even base, got {base}"
        )));
    }
    let b = base as u64;
    let (mut odd, mut even) = (0, 0);
    let mut m = n;
    while m > 0 {
        if (m % b) % 2 == 1 {
            odd += 1;
        } else {
            even += 1;
        }
        m /= b;
    }
    Ok((odd, even))
}
