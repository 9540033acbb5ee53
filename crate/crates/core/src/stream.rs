//! Infinite words: eventually periodic descriptions and lazily generated streams.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Alphabet letters usable in streams.
pub trait Letter: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static {}

impl<T: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static> Letter for T {}

/// An eventually periodic word `prefix(period)^ω` kept in canonical form:
/// the period is primitive and the prefix is as short as possible.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Periodic<L> {
    prefix: Vec<L>,
    period: Vec<L>,
}

impl<L: Letter> Periodic<L> {
    pub fn new(mut prefix: Vec<L>, period: Vec<L>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("empty period".into()));
        }
        let mut period = primitive_root(period);
        while let (Some(a), Some(b)) = (prefix.last(), period.last()) {
            if a != b {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(Periodic { prefix, period })
    }

    /// The constant word `letter^ω`.
    pub fn constant(letter: L) -> Self {
        Periodic {
            prefix: Vec::new(),
            period: vec![letter],
        }
    }

    /// `word` followed by `fill^ω`.
    pub fn padded(word: Vec<L>, fill: L) -> Self {
        Periodic::new(word, vec![fill]).expect("nonempty period")
    }

    pub fn prefix(&self) -> &[L] {
        &self.prefix
    }

    pub fn period(&self) -> &[L] {
        &self.period
    }

    pub fn letter(&self, i: usize) -> L {
        if i < self.prefix.len() {
            self.prefix[i].clone()
        } else {
            let j = (i - self.prefix.len()) % self.period.len();
            self.period[j].clone()
        }
    }

    pub fn truncate(&self, n: usize) -> Vec<L> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// Whether the word extends the finite word `w`.
    pub fn extends(&self, w: &[L]) -> bool {
        w.iter().enumerate().all(|(i, a)| self.letter(i) == *a)
    }

    /// The word with its first `n` letters removed.
    pub fn shift(&self, n: usize) -> Self {
        if n <= self.prefix.len() {
            Periodic::new(self.prefix[n..].to_vec(), self.period.clone()).expect("period kept")
        } else {
            let mut period = self.period.clone();
            let r = (n - self.prefix.len()) % period.len();
            period.rotate_left(r);
            Periodic::new(Vec::new(), period).expect("period kept")
        }
    }

    /// Prepend a finite word.
    pub fn prepend(&self, w: &[L]) -> Self {
        let mut prefix = w.to_vec();
        prefix.extend(self.prefix.iter().cloned());
        Periodic::new(prefix, self.period.clone()).expect("period kept")
    }

    /// Length after which the word is purely periodic.
    pub fn tail_start(&self) -> usize {
        self.prefix.len()
    }

    pub fn map<M: Letter>(&self, f: impl Fn(&L) -> M) -> Periodic<M> {
        Periodic::new(
            self.prefix.iter().map(&f).collect(),
            self.period.iter().map(&f).collect(),
        )
        .expect("period kept")
    }
}

impl<L: Letter> Periodic<L> {
    /// Letterwise combination; the result is periodic after both prefixes,
    /// with period the least common multiple of both periods.
    pub fn zip_with<M: Letter, N: Letter>(&self, other: &Periodic<M>, f: impl Fn(&L, &M) -> N) -> Periodic<N> {
        let start = self.prefix.len().max(other.prefix.len());
        let len = num_integer::lcm(self.period.len(), other.period.len());
        let at = |i: usize| f(&self.letter(i), &other.letter(i));
        Periodic::new((0..start).map(at).collect(), (start..start + len).map(at).collect())
            .expect("nonempty period")
    }
}

fn primitive_root<L: Eq + Clone>(period: Vec<L>) -> Vec<L> {
    let n = period.len();
    for d in 1..=n {
        if n % d == 0 && (0..n).all(|i| period[i] == period[i % d]) {
            return period[..d].to_vec();
        }
    }
    period
}

impl fmt::Display for Periodic<u8> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.prefix {
            write!(f, "{b}")?;
        }
        write!(f, "(")?;
        for b in &self.period {
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Periodic<u64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "<{}>(<{}>)", join(&self.prefix), join(&self.period))
    }
}

type PrefixFn<L> = Arc<dyn Fn(usize) -> Result<Vec<L>> + Send + Sync>;

/// A point of a sequence space: an eventually periodic word, or a procedure
/// producing prefixes on demand.
///
/// A generator must be coherent: `prefix(n)` is a prefix of `prefix(m)` for `n <= m`.
#[derive(Clone)]
pub enum Stream<L> {
    Periodic(Periodic<L>),
    Generated(PrefixFn<L>),
}

impl<L: Letter> Stream<L> {
    pub fn periodic(prefix: Vec<L>, period: Vec<L>) -> Result<Self> {
        Ok(Stream::Periodic(Periodic::new(prefix, period)?))
    }

    pub fn constant(letter: L) -> Self {
        Stream::Periodic(Periodic::constant(letter))
    }

    /// A stream given by a prefix generator.
    pub fn from_prefix_fn(f: impl Fn(usize) -> Result<Vec<L>> + Send + Sync + 'static) -> Self {
        Stream::Generated(Arc::new(f))
    }

    /// A stream given letter by letter.
    pub fn from_letter_fn(f: impl Fn(usize) -> L + Send + Sync + 'static) -> Self {
        Stream::Generated(Arc::new(move |n| Ok((0..n).map(&f).collect())))
    }

    pub fn truncate(&self, n: usize) -> Result<Vec<L>> {
        match self {
            Stream::Periodic(p) => Ok(p.truncate(n)),
            Stream::Generated(g) => {
                let w = g(n)?;
                if w.len() < n {
                    return Err(Error::StreamExhausted { index: w.len() });
                }
                Ok(w[..n].to_vec())
            }
        }
    }

    pub fn letter(&self, i: usize) -> Result<L> {
        match self {
            Stream::Periodic(p) => Ok(p.letter(i)),
            Stream::Generated(_) => Ok(self.truncate(i + 1)?.pop().expect("nonempty")),
        }
    }

    pub fn as_periodic(&self) -> Option<&Periodic<L>> {
        match self {
            Stream::Periodic(p) => Some(p),
            Stream::Generated(_) => None,
        }
    }

    /// Letterwise image under `f`.
    pub fn map<M: Letter>(&self, f: impl Fn(&L) -> M + Send + Sync + 'static) -> Stream<M> {
        match self {
            Stream::Periodic(p) => Stream::Periodic(p.map(f)),
            Stream::Generated(g) => {
                let g = g.clone();
                Stream::from_prefix_fn(move |n| Ok(g(n)?.iter().map(&f).collect()))
            }
        }
    }

    /// The stream with its first `n` letters removed.
    pub fn shift(&self, n: usize) -> Stream<L> {
        match self {
            Stream::Periodic(p) => Stream::Periodic(p.shift(n)),
            Stream::Generated(g) => {
                let g = g.clone();
                Stream::from_prefix_fn(move |m| {
                    let w = g(n + m)?;
                    if w.len() < n + m {
                        return Err(Error::StreamExhausted { index: w.len() });
                    }
                    Ok(w[n..].to_vec())
                })
            }
        }
    }

    /// Prepend a finite word.
    pub fn prepend(&self, w: Vec<L>) -> Stream<L> {
        match self {
            Stream::Periodic(p) => Stream::Periodic(p.prepend(&w)),
            Stream::Generated(_) => {
                let rest = self.clone();
                Stream::from_prefix_fn(move |m| {
                    if m <= w.len() {
                        return Ok(w[..m].to_vec());
                    }
                    let mut out = w.clone();
                    out.extend(rest.truncate(m - w.len())?);
                    Ok(out)
                })
            }
        }
    }
}

impl<L: Letter> From<Periodic<L>> for Stream<L> {
    fn from(p: Periodic<L>) -> Self {
        Stream::Periodic(p)
    }
}

impl<L: Letter> fmt::Debug for Stream<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stream::Periodic(p) => write!(f, "{p:?}"),
            Stream::Generated(g) => match g(8) {
                Ok(w) => write!(f, "Generated({w:?}…)"),
                Err(_) => write!(f, "Generated(…)"),
            },
        }
    }
}

impl fmt::Display for Stream<u8> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stream::Periodic(p) => write!(f, "{p}"),
            Stream::Generated(g) => match g(16) {
                Ok(w) => {
                    for b in w {
                        write!(f, "{b}")?;
                    }
                    write!(f, "…")
                }
                Err(e) => write!(f, "<{e}>"),
            },
        }
    }
}

/// Letterwise XOR of two bit streams.
pub fn xor_bits(a: &Stream<u8>, b: &Stream<u8>) -> Stream<u8> {
    if let (Stream::Periodic(p), Stream::Periodic(q)) = (a, b) {
        return Stream::Periodic(p.zip_with(q, |x, y| x ^ y));
    }
    let (a, b) = (a.clone(), b.clone());
    Stream::from_prefix_fn(move |n| {
        let x = a.truncate(n)?;
        let y = b.truncate(n)?;
        Ok(x.iter().zip(&y).map(|(p, q)| p ^ q).collect())
    })
}
