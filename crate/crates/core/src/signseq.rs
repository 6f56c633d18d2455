//! Surreal numbers as sign sequences in run-length form.
//!
//! A [`SignSeq`] is a list of `(sign, run)` blocks with alternating signs and
//! nonzero ordinal runs. Order, simplicity (prefix order) and the Conway
//! bracket of finite option sets are all decided by walking the block lists,
//! so transfinite runs such as `+^w` cost no more than finite ones.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ordinal::{self, Ordinal};
use crate::text::{Cursor, ParseError, Rational};

/// Finite runs longer than this are rejected by the dyadic conversions.
pub const MAX_FINITE_RUN: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignSeqError {
    #[error("empty cut: a left option is not below every right option")]
    EmptyCut,
    #[error("order violation: expected a <= b")]
    OrderViolation,
    #[error("sign sequence has a transfinite run")]
    NotFinite,
    #[error("{0} is not a dyadic rational")]
    NotDyadic(String),
    #[error("run of length {0} is too long for dyadic conversion")]
    RunTooLong(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// Position rank used for order comparison: `-` < (absent) < `+`.
fn slot_rank(s: Option<Sign>) -> u8 {
    match s {
        Some(Sign::Minus) => 0,
        None => 1,
        Some(Sign::Plus) => 2,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SignSeq {
    blocks: Vec<(Sign, Ordinal)>,
}

/// Result of walking two sequences in lockstep until they first differ.
#[derive(Debug, Clone)]
pub struct Divergence {
    pub common: SignSeq,
    pub next_a: Option<Sign>,
    pub next_b: Option<Sign>,
}

impl SignSeq {
    pub fn zero() -> Self {
        SignSeq { blocks: Vec::new() }
    }

    pub fn from_blocks<I: IntoIterator<Item = (Sign, Ordinal)>>(blocks: I) -> Self {
        let mut s = SignSeq::zero();
        for (sign, run) in blocks {
            s.push_run(sign, &run);
        }
        s
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        Self::from_blocks(signs.iter().map(|&s| (s, Ordinal::one())))
    }

    /// The ordinal `γ` as the constant sequence `+^γ`.
    pub fn from_ordinal(gamma: &Ordinal) -> Self {
        Self::from_blocks([(Sign::Plus, gamma.clone())])
    }

    pub fn blocks(&self) -> &[(Sign, Ordinal)] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Appends `run` copies of `sign`, merging with the last block.
    pub fn push_run(&mut self, sign: Sign, run: &Ordinal) {
        if run.is_zero() {
            return;
        }
        match self.blocks.last_mut() {
            Some((s, r)) if *s == sign => *r = &*r + run,
            _ => self.blocks.push((sign, run.clone())),
        }
    }

    pub fn with(&self, sign: Sign) -> SignSeq {
        let mut s = self.clone();
        s.push_run(sign, &Ordinal::one());
        s
    }

    pub fn length(&self) -> Ordinal {
        self.blocks
            .iter()
            .fold(Ordinal::zero(), |acc, (_, r)| &acc + r)
    }

    pub fn is_finite(&self) -> bool {
        self.blocks.iter().all(|(_, r)| r.is_finite())
    }

    pub fn neg(&self) -> SignSeq {
        SignSeq {
            blocks: self
                .blocks
                .iter()
                .map(|(s, r)| (s.flip(), r.clone()))
                .collect(),
        }
    }

    /// Expands a finite sequence into individual signs.
    pub fn signs(&self) -> Result<Vec<Sign>, SignSeqError> {
        let mut out = Vec::new();
        for (s, r) in &self.blocks {
            let n = r.to_u64().ok_or(SignSeqError::NotFinite)?;
            if n > MAX_FINITE_RUN {
                return Err(SignSeqError::RunTooLong(n.to_string()));
            }
            out.extend(std::iter::repeat(*s).take(n as usize));
        }
        Ok(out)
    }

    /// Walks both sequences until their first differing position.
    pub fn diverge(&self, other: &SignSeq) -> Divergence {
        let mut common = SignSeq::zero();
        let (a, b) = (&self.blocks, &other.blocks);
        let (mut i, mut j) = (0, 0);
        let mut rem_a = a.first().map(|(_, r)| r.clone());
        let mut rem_b = b.first().map(|(_, r)| r.clone());
        loop {
            let next_a = a.get(i).map(|(s, _)| *s);
            let next_b = b.get(j).map(|(s, _)| *s);
            let (Some(sa), Some(sb)) = (next_a, next_b) else {
                return Divergence { common, next_a, next_b };
            };
            if sa != sb {
                return Divergence { common, next_a, next_b };
            }
            let ra = rem_a.take().unwrap();
            let rb = rem_b.take().unwrap();
            match ra.cmp(&rb) {
                Ordering::Equal => {
                    common.push_run(sa, &ra);
                    i += 1;
                    j += 1;
                    rem_a = a.get(i).map(|(_, r)| r.clone());
                    rem_b = b.get(j).map(|(_, r)| r.clone());
                }
                Ordering::Less => {
                    common.push_run(sa, &ra);
                    rem_b = Some(ra.left_sub(&rb).unwrap());
                    i += 1;
                    rem_a = a.get(i).map(|(_, r)| r.clone());
                }
                Ordering::Greater => {
                    common.push_run(sa, &rb);
                    rem_a = Some(rb.left_sub(&ra).unwrap());
                    j += 1;
                    rem_b = b.get(j).map(|(_, r)| r.clone());
                }
            }
        }
    }

    /// Surreal order.
    pub fn cmp_num(&self, other: &SignSeq) -> Ordering {
        let d = self.diverge(other);
        slot_rank(d.next_a).cmp(&slot_rank(d.next_b))
    }

    /// `self ⊑ other`: `self` is an initial segment of `other`.
    pub fn is_simpler(&self, other: &SignSeq) -> bool {
        self.diverge(other).next_a.is_none()
    }

    /// Prefix of the given length (clamped to the whole sequence).
    pub fn prefix(&self, len: &Ordinal) -> SignSeq {
        let mut out = SignSeq::zero();
        let mut remaining = len.clone();
        for (s, r) in &self.blocks {
            if remaining.is_zero() {
                break;
            }
            if &remaining <= r {
                out.push_run(*s, &remaining);
                break;
            }
            out.push_run(*s, r);
            remaining = r.left_sub(&remaining).unwrap();
        }
        out
    }

    /// Shortest prefix `p` of `self` with `length(p) >= min_len` such that
    /// `self` continues with `sign` right after `p`.
    fn shortest_prefix_followed_by(&self, sign: Sign, min_len: &Ordinal) -> Option<SignSeq> {
        let mut start = Ordinal::zero();
        for (s, r) in &self.blocks {
            let end = &start + r;
            if *s == sign {
                let p = if &start >= min_len { &start } else { min_len };
                if p < &end {
                    return Some(self.prefix(p));
                }
            }
            start = end;
        }
        None
    }

    /// Left and right canonical options: proper prefixes below / above.
    pub fn canonical_options(&self) -> Result<(Vec<SignSeq>, Vec<SignSeq>), SignSeqError> {
        let signs = self.signs()?;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for k in 0..signs.len() {
            let p = SignSeq::from_signs(&signs[..k]);
            match signs[k] {
                Sign::Plus => left.push(p),
                Sign::Minus => right.push(p),
            }
        }
        Ok((left, right))
    }

    /// Exact value of a finite sign sequence.
    pub fn to_dyadic(&self) -> Result<Rational, SignSeqError> {
        let mut value = Rational::zero();
        let mut step = Rational::one();
        let mut first = true;
        for (s, r) in &self.blocks {
            let k = r.to_u64().ok_or(SignSeqError::NotFinite)?;
            if k > MAX_FINITE_RUN {
                return Err(SignSeqError::RunTooLong(k.to_string()));
            }
            let k32 = k as u32;
            let delta = if first {
                first = false;
                step = Rational::new(BigInt::one(), BigInt::from(2));
                Rational::from_integer(BigInt::from(k))
            } else {
                // step + step/2 + ... (k terms) = 2 step (1 - 2^-k)
                let pow = BigInt::one() << k32;
                let sum = &step * Rational::new(BigInt::from(2) * (&pow - 1), pow.clone());
                step = &step / Rational::from_integer(pow);
                sum
            };
            match s {
                Sign::Plus => value += delta,
                Sign::Minus => value -= delta,
            }
        }
        Ok(value)
    }

    pub fn from_dyadic(q: &Rational) -> Result<SignSeq, SignSeqError> {
        let den = q.denom();
        if !(den.is_one() || (den.is_positive() && (den & (den - BigInt::one())).is_zero())) {
            return Err(SignSeqError::NotDyadic(crate::text::format_rational(q)));
        }
        if q.is_negative() {
            return Ok(Self::from_dyadic(&-q)?.neg());
        }
        let int = q.floor().to_integer();
        let frac = q - Rational::from_integer(int.clone());
        let int = int.to_biguint().expect("non-negative");
        let mut s = SignSeq::zero();
        if frac.is_zero() {
            s.push_run(Sign::Plus, &Ordinal::natural(int));
            return Ok(s);
        }
        s.push_run(Sign::Plus, &Ordinal::natural(int + BigUint::one()));
        s.push_run(Sign::Minus, &Ordinal::one());
        let bits = den.bits() - 1;
        if bits > MAX_FINITE_RUN {
            return Err(SignSeqError::RunTooLong(bits.to_string()));
        }
        // frac = scaled / 2^bits with scaled odd
        let scaled = frac.numer().to_biguint().unwrap();
        // bits b_1 .. b_{k-1} of the fraction, most significant first
        for i in 1..bits {
            let bit = (&scaled >> (bits - i) as u32).is_odd();
            s.push_run(if bit { Sign::Plus } else { Sign::Minus }, &Ordinal::one());
        }
        Ok(s)
    }

    /// Conway bracket `{L | R}` of finite option sets.
    pub fn bracket(left: &[SignSeq], right: &[SignSeq]) -> Result<SignSeq, SignSeqError> {
        let lo = left.iter().max_by(|a, b| a.cmp_num(b));
        let hi = right.iter().min_by(|a, b| a.cmp_num(b));
        Ok(match (lo, hi) {
            (None, None) => SignSeq::zero(),
            (Some(lo), None) => lo
                .shortest_prefix_followed_by(Sign::Minus, &Ordinal::zero())
                .unwrap_or_else(|| lo.with(Sign::Plus)),
            (None, Some(hi)) => hi
                .shortest_prefix_followed_by(Sign::Plus, &Ordinal::zero())
                .unwrap_or_else(|| hi.with(Sign::Minus)),
            (Some(lo), Some(hi)) => {
                if lo.cmp_num(hi) != Ordering::Less {
                    return Err(SignSeqError::EmptyCut);
                }
                let d = lo.diverge(hi);
                let beyond = d.common.length().succ();
                match (d.next_a, d.next_b) {
                    (Some(Sign::Minus), Some(Sign::Plus)) => d.common,
                    (None, Some(Sign::Plus)) => hi
                        .shortest_prefix_followed_by(Sign::Plus, &beyond)
                        .unwrap_or_else(|| hi.with(Sign::Minus)),
                    (Some(Sign::Minus), None) => lo
                        .shortest_prefix_followed_by(Sign::Minus, &beyond)
                        .unwrap_or_else(|| lo.with(Sign::Plus)),
                    _ => unreachable!("lo < hi"),
                }
            }
        })
    }

    /// The ⊑-largest common initial segment of `a <= b`.
    pub fn common_ancestor(a: &SignSeq, b: &SignSeq) -> Result<SignSeq, SignSeqError> {
        if a.cmp_num(b) == Ordering::Greater {
            return Err(SignSeqError::OrderViolation);
        }
        Ok(a.diverge(b).common)
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (s, r)) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", s.symbol())?;
            if *r != Ordinal::one() {
                write!(f, "^{}", r.fmt_atom())?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignSeq{self}")
    }
}

pub(crate) fn parse_signseq(cur: &mut Cursor) -> Result<SignSeq, ParseError> {
    cur.expect('(')?;
    let mut s = SignSeq::zero();
    loop {
        cur.eat(',');
        let sign = match cur.peek() {
            Some(')') => {
                cur.bump();
                return Ok(s);
            }
            Some('+') => Sign::Plus,
            Some('-') | Some('−') => Sign::Minus,
            _ => return Err(cur.error("expected '+', '-' or ')'")),
        };
        cur.bump();
        let run = if cur.eat('^') {
            let r = ordinal::parse_primary(cur)?;
            if r.is_zero() {
                return Err(cur.error("run length must be nonzero"));
            }
            r
        } else {
            Ordinal::one()
        };
        s.push_run(sign, &run);
    }
}

impl FromStr for SignSeq {
    type Err = ParseError;
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(text);
        let s = parse_signseq(&mut cur)?;
        cur.finish()?;
        Ok(s)
    }
}
