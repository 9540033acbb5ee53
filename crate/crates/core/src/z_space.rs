//! The space `Z = (ω × ω) ∪ {∞}`, whose rows `D_n` are closed discrete and
//! converge to `∞`, with a uniquely universal coding of its closed sets by
//! `ω × 2^ω`.
//!
//! A closed set is coded by `(n, x)`:
//! * `n = 0`: sets containing `∞`; `x(⟨i,j⟩) = 0` iff `(i,j)` is present, with
//!   the Cantor pairing `⟨i,j⟩ = (i+j)(i+j+1)/2 + j`;
//! * `n = 1`: subsets of `D_0`; `x(j) = 1` iff `(0,j)` is present;
//! * `n = 1 + 2^(k-1)(2l-1)`: subsets of `D_0 ∪ … ∪ D_k` whose least point in
//!   `D_k` is column `l-1`; bit `m` addresses row `m mod (k+1)`, column
//!   `m div (k+1)`, and row `k` counts only the free columns past `l-1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::baire_maps::IndexedStream;
use crate::error::{Error, Result};
use crate::family::{Membership, UniversalFamily};
use crate::spaces::parse::Cursor;
use crate::stream::{Periodic, Stream};

/// A coding parameter `(n, x) ∈ ω × 2^ω`.
pub type ZParam = IndexedStream;

/// A point of `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZPoint {
    At(u64, u64),
    Inf,
}

impl fmt::Display for ZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZPoint::At(i, j) => write!(f, "({i},{j})"),
            ZPoint::Inf => f.write_str("inf"),
        }
    }
}

/// `n = 1 + 2^(k-1)(2l-1)` for `k, l >= 1`.
pub fn z_index(k: u64, l: u64) -> Result<u64> {
    if k == 0 || l == 0 {
        return Err(Error::OutOfRange(format!("z_index needs k, l >= 1, got ({k}, {l})")));
    }
    2u64.checked_pow((k - 1) as u32)
        .and_then(|p| p.checked_mul(2 * l - 1))
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::OutOfRange(format!("z_index({k}, {l}) overflows")))
}

/// The unique `(k, l)` with `z_index(k, l) = n`, for `n >= 2`.
pub fn z_index_inverse(n: u64) -> Result<(u64, u64)> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("{n} < 2 is not a row-bounded index")));
    }
    let m = n - 1;
    let k = m.trailing_zeros() as u64 + 1;
    let l = ((m >> (k - 1)) + 1) / 2;
    Ok((k, l))
}

pub fn cantor_pair(i: u64, j: u64) -> u64 {
    (i + j) * (i + j + 1) / 2 + j
}

pub fn cantor_unpair(m: u64) -> (u64, u64) {
    let mut s = ((((8 * m as u128 + 1) as f64).sqrt() as u64).saturating_sub(1)) / 2;
    while (s + 1) * (s + 2) / 2 <= m {
        s += 1;
    }
    while s * (s + 1) / 2 > m {
        s -= 1;
    }
    let j = m - s * (s + 1) / 2;
    (s - j, j)
}

fn row_is_empty(r: &Periodic<u8>) -> bool {
    *r == Periodic::constant(0)
}

fn first_one(r: &Periodic<u8>) -> Option<u64> {
    (0..r.tail_start() + r.period().len())
        .find(|i| r.letter(*i) == 1)
        .map(|i| i as u64)
}

fn finite_row(cols: &BTreeSet<u64>) -> Periodic<u8> {
    let len = cols.iter().next_back().map_or(0, |c| c + 1);
    Periodic::padded((0..len).map(|j| cols.contains(&j) as u8).collect(), 0)
}

/// A subset of `Z` with eventually periodic rows: row `i` is `rows[i]` when
/// listed and `tail` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZSetDesc {
    inf: bool,
    rows: BTreeMap<u64, Periodic<u8>>,
    tail: Periodic<u8>,
}

impl ZSetDesc {
    pub fn new(inf: bool, rows: BTreeMap<u64, Periodic<u8>>, tail: Periodic<u8>) -> Self {
        let rows = rows.into_iter().filter(|(_, r)| *r != tail).collect();
        ZSetDesc { inf, rows, tail }
    }

    pub fn finite(inf: bool, points: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut by_row: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
        for (i, j) in points {
            by_row.entry(i).or_default().insert(j);
        }
        let rows = by_row.iter().map(|(i, c)| (*i, finite_row(c))).collect();
        ZSetDesc::new(inf, rows, Periodic::constant(0))
    }

    pub fn has_inf(&self) -> bool {
        self.inf
    }

    pub fn row(&self, i: u64) -> &Periodic<u8> {
        self.rows.get(&i).unwrap_or(&self.tail)
    }

    pub fn tail(&self) -> &Periodic<u8> {
        &self.tail
    }

    pub fn contains(&self, p: ZPoint) -> bool {
        match p {
            ZPoint::Inf => self.inf,
            ZPoint::At(i, j) => self.row(i).letter(j as usize) == 1,
        }
    }

    /// The points, when the set is finite.
    pub fn points(&self) -> Option<BTreeSet<(u64, u64)>> {
        if !row_is_empty(&self.tail) || self.rows.values().any(|r| r.period() != [0]) {
            return None;
        }
        Some(
            self.rows
                .iter()
                .flat_map(|(i, r)| {
                    (0..r.tail_start())
                        .filter(|j| r.letter(*j) == 1)
                        .map(move |j| (*i, j as u64))
                })
                .collect(),
        )
    }

    /// `[inf;] rows: {(i,j),...}`, `inf`, `EMPTY`, or `;`-separated clauses
    /// `row i = w` and `tail = w` with `w` an eventually periodic bit word.
    pub fn parse(s: &str) -> Result<ZSetDesc> {
        let mut c = Cursor::new(s);
        if c.eat("EMPTY") {
            c.finish()?;
            return Ok(ZSetDesc::finite(false, []));
        }
        let inf = c.eat("inf");
        if inf && c.at_end() {
            return Ok(ZSetDesc::finite(true, []));
        }
        if inf {
            c.expect(";")?;
        }
        let mut points = Vec::new();
        let mut rows: BTreeMap<u64, Periodic<u8>> = BTreeMap::new();
        let mut tail = Periodic::constant(0);
        loop {
            if c.eat("rows:") {
                c.expect("{")?;
                if !c.eat("}") {
                    loop {
                        c.expect("(")?;
                        let i = c.nat()?;
                        c.expect(",")?;
                        let j = c.nat()?;
                        c.expect(")")?;
                        points.push((i, j));
                        if c.eat("}") {
                            break;
                        }
                        c.expect(",")?;
                    }
                }
            } else if c.eat("row") {
                let i = c.nat()?;
                c.expect("=")?;
                let w = c.periodic_bits()?;
                if rows.insert(i, w).is_some() {
                    return c.err(format!("row {i} given twice"));
                }
            } else if c.eat("tail") {
                c.expect("=")?;
                tail = c.periodic_bits()?;
            } else {
                return c.err("expected `rows:`, `row` or `tail`");
            }
            if c.at_end() {
                break;
            }
            c.expect(";")?;
        }
        let mut extra: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
        for (i, j) in points {
            extra.entry(i).or_default().insert(j);
        }
        for (i, cols) in extra {
            let base = rows.get(&i).unwrap_or(&tail).clone();
            rows.insert(i, base.zip_with(&finite_row(&cols), |a, b| a | b));
        }
        Ok(ZSetDesc::new(inf, rows, tail))
    }
}

impl fmt::Display for ZSetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut clauses = Vec::new();
        match self.points() {
            Some(pts) if pts.is_empty() => {}
            Some(pts) => {
                let v: Vec<String> = pts.iter().map(|(i, j)| format!("({i},{j})")).collect();
                clauses.push(format!("rows: {{{}}}", v.join(",")));
            }
            None => {
                for (i, r) in &self.rows {
                    clauses.push(format!("row {i} = {r}"));
                }
                if !row_is_empty(&self.tail) {
                    clauses.push(format!("tail = {}", self.tail));
                }
            }
        }
        match (self.inf, clauses.is_empty()) {
            (false, true) => f.write_str("EMPTY"),
            (true, true) => f.write_str("inf"),
            (false, false) => f.write_str(&clauses.join("; ")),
            (true, false) => write!(f, "inf; {}", clauses.join("; ")),
        }
    }
}

/// `X` is closed iff `∞ ∈ X` or `X` lies in finitely many rows.
pub fn z_is_closed(d: &ZSetDesc) -> bool {
    d.inf || row_is_empty(&d.tail)
}

/// A closed subset of `Z` in the normal form matching its coding class.
#[derive(Clone, Debug)]
pub enum ZClosedDesc {
    /// `∞ ∈ X`; the characteristic word of `X ∖ {∞}` along the pairing.
    WithInfinity(Stream<u8>),
    /// `X ⊆ D_0`; the characteristic word of row 0.
    SubsetRow0(Stream<u8>),
    /// `X ⊆ D_0 ∪ … ∪ D_k` with `k >= 1` and least point `(k, min)` in `D_k`;
    /// characteristic words of rows `0..=k`.
    RowBounded { k: u64, min: u64, rows: Vec<Stream<u8>> },
}

/// `y(j) = x(j·step + offset)`, kept eventually periodic when `x` is.
fn stride(x: &Stream<u8>, step: usize, offset: usize) -> Stream<u8> {
    match x.as_periodic() {
        Some(p) => {
            let start = p.tail_start().saturating_sub(offset).div_ceil(step);
            let len = p.period().len();
            let at = |j: usize| p.letter(j * step + offset);
            Stream::Periodic(
                Periodic::new((0..start).map(at).collect(), (start..start + len).map(at).collect())
                    .expect("nonempty period"),
            )
        }
        None => {
            let x = x.clone();
            Stream::from_prefix_fn(move |n| {
                let w = x.truncate(n * step + offset)?;
                Ok((0..n).map(|j| w[j * step + offset]).collect())
            })
        }
    }
}

/// `x(m) = rows[m mod s](m div s)` with `s = rows.len()`.
fn interleave(rows: &[Stream<u8>]) -> Stream<u8> {
    let s = rows.len();
    let periodic: Option<Vec<&Periodic<u8>>> = rows.iter().map(|r| r.as_periodic()).collect();
    match periodic {
        Some(ps) => {
            let start = ps.iter().map(|p| p.tail_start()).max().unwrap_or(0) * s;
            let len = ps.iter().fold(1, |a, p| num_integer::lcm(a, p.period().len())) * s;
            let at = |m: usize| ps[m % s].letter(m / s);
            Stream::Periodic(
                Periodic::new((0..start).map(at).collect(), (start..start + len).map(at).collect())
                    .expect("nonempty period"),
            )
        }
        None => {
            let rows = rows.to_vec();
            Stream::from_prefix_fn(move |n| {
                let cols = n.div_ceil(s);
                let r: Vec<Vec<u8>> = rows.iter().map(|r| r.truncate(cols)).collect::<Result<_>>()?;
                Ok((0..n).map(|m| r[m % s][m / s]).collect())
            })
        }
    }
}

fn flip(x: &Stream<u8>) -> Stream<u8> {
    x.map(|b| 1 - b)
}

impl ZClosedDesc {
    /// The whole space, coded by `(0, 0⃗)`.
    pub fn whole() -> Self {
        ZClosedDesc::WithInfinity(Stream::constant(1))
    }

    pub fn from_set(d: &ZSetDesc) -> Result<Self> {
        if !z_is_closed(d) {
            return Err(Error::NotClosed(format!(
                "{d} meets infinitely many rows but omits inf"
            )));
        }
        if d.inf {
            return Ok(ZClosedDesc::WithInfinity(pairing_word(d)));
        }
        let top = d.rows.iter().rev().find(|(_, r)| !row_is_empty(r)).map(|(i, _)| *i);
        match top {
            None | Some(0) => Ok(ZClosedDesc::SubsetRow0(d.row(0).clone().into())),
            Some(k) => Ok(ZClosedDesc::RowBounded {
                k,
                min: first_one(d.row(k)).expect("nonempty row"),
                rows: (0..=k).map(|i| d.row(i).clone().into()).collect(),
            }),
        }
    }

    pub fn contains(&self, p: ZPoint) -> Result<bool> {
        Ok(match (self, p) {
            (ZClosedDesc::WithInfinity(_), ZPoint::Inf) => true,
            (_, ZPoint::Inf) => false,
            (ZClosedDesc::WithInfinity(c), ZPoint::At(i, j)) => c.letter(cantor_pair(i, j) as usize)? == 1,
            (ZClosedDesc::SubsetRow0(r), ZPoint::At(i, j)) => i == 0 && r.letter(j as usize)? == 1,
            (ZClosedDesc::RowBounded { k, rows, .. }, ZPoint::At(i, j)) => {
                i <= *k && rows[i as usize].letter(j as usize)? == 1
            }
        })
    }

    /// Agreement with `other` on the coding class and on every point `(i, j)`
    /// with `i, j < depth`.
    pub fn agrees(&self, other: &ZClosedDesc, depth: u64) -> Result<bool> {
        let class = |d: &ZClosedDesc| match d {
            ZClosedDesc::WithInfinity(_) => (0, 0, 0),
            ZClosedDesc::SubsetRow0(_) => (1, 0, 0),
            ZClosedDesc::RowBounded { k, min, .. } => (2, *k, *min),
        };
        if class(self) != class(other) {
            return Ok(false);
        }
        Ok(self.grid(depth)? == other.grid(depth)?)
    }

    /// Membership of `(i, j)` for `i, j < depth`, reading each word once.
    fn grid(&self, depth: u64) -> Result<Vec<Vec<bool>>> {
        let d = depth as usize;
        Ok(match self {
            ZClosedDesc::WithInfinity(c) => {
                let w = match depth {
                    0 => Vec::new(),
                    _ => c.truncate(cantor_pair(depth - 1, depth - 1) as usize + 1)?,
                };
                (0..depth)
                    .map(|i| (0..depth).map(|j| w[cantor_pair(i, j) as usize] == 1).collect())
                    .collect()
            }
            ZClosedDesc::SubsetRow0(r) => {
                let w = r.truncate(d)?;
                (0..d)
                    .map(|i| w.iter().map(|b| i == 0 && *b == 1).collect())
                    .collect()
            }
            ZClosedDesc::RowBounded { k, rows, .. } => (0..depth)
                .map(|i| match i <= *k {
                    true => Ok(rows[i as usize].truncate(d)?.iter().map(|b| *b == 1).collect()),
                    false => Ok(vec![false; d]),
                })
                .collect::<Result<_>>()?,
        })
    }

    /// The exact set when every word involved is eventually periodic and,
    /// for sets with `∞`, the rest is finite.
    pub fn as_set(&self) -> Option<ZSetDesc> {
        match self {
            ZClosedDesc::WithInfinity(c) => {
                let p = c.as_periodic()?;
                if !row_is_empty(&Periodic::new(vec![], p.period().to_vec()).ok()?) {
                    return None;
                }
                let pts = (0..p.tail_start())
                    .filter(|m| p.letter(*m) == 1)
                    .map(|m| cantor_unpair(m as u64));
                Some(ZSetDesc::finite(true, pts))
            }
            ZClosedDesc::SubsetRow0(r) => Some(ZSetDesc::new(
                false,
                BTreeMap::from([(0, r.as_periodic()?.clone())]),
                Periodic::constant(0),
            )),
            ZClosedDesc::RowBounded { rows, .. } => {
                let mut m = BTreeMap::new();
                for (i, r) in rows.iter().enumerate() {
                    m.insert(i as u64, r.as_periodic()?.clone());
                }
                Some(ZSetDesc::new(false, m, Periodic::constant(0)))
            }
        }
    }
}

impl fmt::Display for ZClosedDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.as_set() {
            return write!(f, "{s}");
        }
        match self {
            ZClosedDesc::WithInfinity(c) => write!(f, "inf; pairing = {c}"),
            ZClosedDesc::SubsetRow0(r) => write!(f, "row 0 = {r}"),
            ZClosedDesc::RowBounded { rows, .. } => {
                let v: Vec<String> = rows.iter().enumerate().map(|(i, r)| format!("row {i} = {r}")).collect();
                f.write_str(&v.join("; "))
            }
        }
    }
}

/// The characteristic word of `X ∖ {∞}` along the pairing.
fn pairing_word(d: &ZSetDesc) -> Stream<u8> {
    if let Some(pts) = d.points() {
        let len = pts.iter().map(|(i, j)| cantor_pair(*i, *j) + 1).max().unwrap_or(0);
        let w = (0..len).map(|m| pts.contains(&cantor_unpair(m)) as u8).collect();
        return Stream::Periodic(Periodic::padded(w, 0));
    }
    let d = d.clone();
    Stream::from_letter_fn(move |m| {
        let (i, j) = cantor_unpair(m as u64);
        d.row(i).letter(j as usize)
    })
}

pub fn z_encode(d: &ZClosedDesc) -> Result<ZParam> {
    Ok(match d {
        ZClosedDesc::WithInfinity(c) => IndexedStream::new(0, flip(c)),
        ZClosedDesc::SubsetRow0(r) => IndexedStream::new(1, r.clone()),
        ZClosedDesc::RowBounded { k, min, rows } => {
            if *k == 0 || rows.len() as u64 != k + 1 {
                return Err(Error::InvalidInput(format!("row-bounded set needs k >= 1 and k+1 rows, got k = {k}")));
            }
            let top = &rows[*k as usize];
            let head = top.truncate(*min as usize + 1)?;
            if head.iter().take(*min as usize).any(|b| *b == 1) || head[*min as usize] != 1 {
                return Err(Error::InvalidInput(format!("row {k} does not start at column {min}")));
            }
            let mut packed: Vec<Stream<u8>> = rows[..*k as usize].to_vec();
            packed.push(top.shift(*min as usize + 1));
            IndexedStream::new(z_index(*k, min + 1)?, interleave(&packed))
        }
    })
}

pub fn z_decode(p: &ZParam) -> Result<ZClosedDesc> {
    Ok(match p.n {
        0 => ZClosedDesc::WithInfinity(flip(&p.x)),
        1 => ZClosedDesc::SubsetRow0(p.x.clone()),
        n => {
            let (k, l) = z_index_inverse(n)?;
            let s = k as usize + 1;
            let mut rows: Vec<Stream<u8>> = (0..k as usize).map(|i| stride(&p.x, s, i)).collect();
            let mut head = vec![0; l as usize - 1];
            head.push(1);
            rows.push(stride(&p.x, s, k as usize).prepend(head));
            ZClosedDesc::RowBounded { k, min: l - 1, rows }
        }
    })
}

/// Reads at most one bit of `x`.
pub fn z_member(p: &ZParam, pt: ZPoint) -> Result<bool> {
    let bit = |m: u64| -> Result<bool> { Ok(p.x.letter(m as usize)? == 1) };
    match (p.n, pt) {
        (0, ZPoint::Inf) => Ok(true),
        (_, ZPoint::Inf) => Ok(false),
        (0, ZPoint::At(i, j)) => Ok(!bit(cantor_pair(i, j))?),
        (1, ZPoint::At(i, j)) => Ok(i == 0 && bit(j)?),
        (n, ZPoint::At(i, j)) => {
            let (k, l) = z_index_inverse(n)?;
            let min = l - 1;
            if i > k {
                Ok(false)
            } else if i < k {
                bit(j * (k + 1) + i)
            } else if j < min {
                Ok(false)
            } else if j == min {
                Ok(true)
            } else {
                bit((j - l) * (k + 1) + k)
            }
        }
    }
}

/// The closed set `{(p, z) : z ∈ X_p} ⊆ (ω × 2^ω) × Z`, membership being exact.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZFamily;

impl UniversalFamily for ZFamily {
    type Param = ZParam;
    type Point = ZPoint;
    type Set = ZClosedDesc;

    fn member(&self, p: &ZParam, z: &ZPoint, _: usize) -> Result<Membership> {
        Ok(if z_member(p, *z)? { Membership::In } else { Membership::Out })
    }

    fn encode(&self, d: &ZClosedDesc) -> Result<ZParam> {
        z_encode(d)
    }
}

/// All `2^10` closed sets inside rows and columns `{0, 1, 2}`, with or without `∞`.
pub fn desk_sets() -> Vec<ZSetDesc> {
    let cells: Vec<(u64, u64)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
    (0u32..1024)
        .map(|mask| {
            let pts = cells.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, c)| *c);
            ZSetDesc::finite(mask >> 9 & 1 == 1, pts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero() -> Stream<u8> {
        Stream::constant(0)
    }

    #[test]
    fn index_examples() {
        assert_eq!(z_index(1, 1).unwrap(), 2);
        assert_eq!(z_index(3, 2).unwrap(), 13);
        assert_eq!(z_index(2, 6).unwrap(), 23);
        assert_eq!(z_index_inverse(23).unwrap(), (2, 6));
        assert!(matches!(z_index_inverse(1), Err(Error::OutOfRange(_))));
        for k in 1..=16 {
            for l in 1..=64 {
                assert_eq!(z_index_inverse(z_index(k, l).unwrap()).unwrap(), (k, l));
            }
        }
    }

    #[test]
    fn pairing_inverts() {
        for m in 0..5000 {
            let (i, j) = cantor_unpair(m);
            assert_eq!(cantor_pair(i, j), m);
        }
    }

    #[test]
    fn closedness_examples() {
        assert!(z_is_closed(&ZSetDesc::parse("inf").unwrap()));
        assert!(z_is_closed(&ZSetDesc::parse("EMPTY").unwrap()));
        let column = ZSetDesc::parse("tail = 1(0)").unwrap();
        assert!(!z_is_closed(&column));
        assert!(matches!(ZClosedDesc::from_set(&column), Err(Error::NotClosed(_))));
        assert!(z_is_closed(&ZSetDesc::parse("inf; tail = 1(0)").unwrap()));
    }

    #[test]
    fn encode_examples() {
        let e = z_encode(&ZClosedDesc::from_set(&ZSetDesc::parse("EMPTY").unwrap()).unwrap()).unwrap();
        assert_eq!((e.n, e.x.as_periodic()), (1, zero().as_periodic()));
        let i = z_encode(&ZClosedDesc::from_set(&ZSetDesc::parse("inf").unwrap()).unwrap()).unwrap();
        assert_eq!((i.n, i.x.as_periodic()), (0, Some(&Periodic::constant(1))));
        let p = z_encode(&ZClosedDesc::from_set(&ZSetDesc::parse("rows: {(2,5)}").unwrap()).unwrap()).unwrap();
        assert_eq!((p.n, p.x.as_periodic()), (23, zero().as_periodic()));
    }

    #[test]
    fn decode_examples() {
        let d = z_decode(&IndexedStream::new(0, Stream::constant(1))).unwrap();
        assert_eq!(d.as_set().unwrap().to_string(), "inf");
        let d = z_decode(&IndexedStream::new(1, zero())).unwrap();
        assert_eq!(d.as_set().unwrap().to_string(), "EMPTY");
        let d = z_decode(&IndexedStream::new(2, zero())).unwrap();
        assert_eq!(d.as_set().unwrap().to_string(), "rows: {(1,0)}");
    }

    #[test]
    fn member_examples() {
        assert!(z_member(&IndexedStream::new(0, Stream::constant(1)), ZPoint::Inf).unwrap());
        let p = IndexedStream::new(23, zero());
        assert!(z_member(&p, ZPoint::At(2, 5)).unwrap());
        assert!(!z_member(&p, ZPoint::At(3, 0)).unwrap());
        assert!(!z_member(&p, ZPoint::At(2, 4)).unwrap());
        let whole = IndexedStream::new(0, zero());
        for i in 0..10 {
            for j in 0..10 {
                assert!(z_member(&whole, ZPoint::At(i, j)).unwrap());
            }
        }
        assert!(z_member(&whole, ZPoint::Inf).unwrap());
    }

    #[test]
    fn member_agrees_with_decode() {
        let xs = [
            Stream::periodic(vec![1, 0, 1], vec![0, 1, 1]).unwrap(),
            Stream::from_letter_fn(|m| ((m * m + 3) % 5 < 2) as u8),
        ];
        for n in 0..40 {
            for x in &xs {
                let p = IndexedStream::new(n, x.clone());
                let d = z_decode(&p).unwrap();
                for pt in (0..6).flat_map(|i| (0..9).map(move |j| ZPoint::At(i, j))).chain([ZPoint::Inf]) {
                    assert_eq!(z_member(&p, pt).unwrap(), d.contains(pt).unwrap(), "{n} {pt}");
                }
                let q = z_encode(&d).unwrap();
                assert_eq!(q.n, n);
                assert_eq!(q.x.truncate(64).unwrap(), x.truncate(64).unwrap());
            }
        }
    }

    #[test]
    fn parse_display_examples() {
        for s in ["EMPTY", "inf", "rows: {(0,1),(2,5)}", "inf; rows: {(1,1)}", "row 3 = 0(01)", "inf; tail = (1)"] {
            let d = ZSetDesc::parse(s).unwrap();
            assert_eq!(d.to_string(), s);
            assert_eq!(ZSetDesc::parse(&d.to_string()).unwrap(), d);
        }
        let d = ZSetDesc::parse("inf; tail = 1(0); rows: {(0,3)}").unwrap();
        assert!(d.contains(ZPoint::At(0, 3)) && d.contains(ZPoint::At(9, 0)) && !d.contains(ZPoint::At(9, 3)));
        match ZSetDesc::parse("rows: {(1,2)").unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 12),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn neighbourhoods_of_inf_hold_a_whole_row() {
        // In `Z' ⊆ ω^ω`, `(n, j)` is `x(n) = j+1`, zero elsewhere, and `∞` is `0⃗`.
        let embed = |n: u64, j: u64, len: usize| -> Vec<u64> {
            (0..len as u64).map(|i| if i == n { j + 1 } else { 0 }).collect()
        };
        for d in 0..8 {
            let cylinder = vec![0u64; d];
            assert!((0..200).all(|j| embed(d as u64, j, d + 1).starts_with(&cylinder)));
        }
    }
}
