//! Moving universal families along continuous bijections and combining them.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::{Membership, UniversalFamily};
use crate::stream::{xor_bits, Periodic, Stream};

use super::{apply_stream, BrouwerMap, PrefixMap, SPresentation, STAR};

/// A parameter of `U = {(x, z) : (f(x), z) ∈ V}`: an input point, or the
/// preimage of a parameter of `V`, kept symbolic since `f⁻¹` need not act on
/// prefixes.
#[derive(Clone)]
pub enum TransferParam<A, B> {
    Input(Stream<A>),
    PreimageOf(Stream<B>),
}

impl<A: crate::stream::Letter, B: crate::stream::Letter> fmt::Debug for TransferParam<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransferParam::Input(x) => write!(f, "Input({x:?})"),
            TransferParam::PreimageOf(p) => write!(f, "PreimageOf({p:?})"),
        }
    }
}

pub struct TransferFamily<M, V> {
    pub map: M,
    pub inner: V,
}

pub fn transfer_uu<M, V>(map: M, inner: V) -> TransferFamily<M, V>
where
    M: PrefixMap + Clone + 'static,
    V: UniversalFamily<Param = Stream<M::Out>>,
{
    TransferFamily { map, inner }
}

/// Running out of input letters leaves the answer open rather than failing.
fn exhaustion_is_unknown(r: Result<Membership>, depth: usize) -> Result<Membership> {
    match r {
        Err(Error::StreamExhausted { .. }) => Ok(Membership::Unknown { depth }),
        r => r,
    }
}

impl<M, V> UniversalFamily for TransferFamily<M, V>
where
    M: PrefixMap + Clone + 'static,
    V: UniversalFamily<Param = Stream<M::Out>>,
{
    type Param = TransferParam<M::In, M::Out>;
    type Point = V::Point;
    type Set = V::Set;

    fn member(&self, x: &Self::Param, z: &V::Point, depth: usize) -> Result<Membership> {
        match x {
            TransferParam::Input(x) => {
                let fx = apply_stream(&self.map, x);
                exhaustion_is_unknown(self.inner.member(&fx, z, depth), depth)
            }
            TransferParam::PreimageOf(p) => self.inner.member(p, z, depth),
        }
    }

    fn encode(&self, s: &V::Set) -> Result<Self::Param> {
        Ok(TransferParam::PreimageOf(self.inner.encode(s)?))
    }
}

/// `((x_i), inj_j(y)) ∈ U` iff `(x_j, y) ∈ U_j`.
pub struct ProductSumFamily<F> {
    pub parts: Vec<F>,
}

pub fn product_sum_uu<F: UniversalFamily>(parts: Vec<F>) -> Result<ProductSumFamily<F>> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("product of no families".into()));
    }
    Ok(ProductSumFamily { parts })
}

impl<F: UniversalFamily> UniversalFamily for ProductSumFamily<F>
where
    F::Set: Clone,
{
    type Param = Vec<F::Param>;
    type Point = (usize, F::Point);
    /// One component per summand.
    type Set = Vec<F::Set>;

    fn member(&self, xs: &Vec<F::Param>, (j, y): &(usize, F::Point), depth: usize) -> Result<Membership> {
        if xs.len() != self.parts.len() {
            return Err(Error::InvalidInput(format!(
                "{} coordinates for {} factors",
                xs.len(),
                self.parts.len()
            )));
        }
        let part = self
            .parts
            .get(*j)
            .ok_or_else(|| Error::OutOfRange(format!("summand {j} of {}", self.parts.len())))?;
        part.member(&xs[*j], y, depth)
    }

    fn encode(&self, s: &Vec<F::Set>) -> Result<Vec<F::Param>> {
        if s.len() != self.parts.len() {
            return Err(Error::InvalidInput(format!(
                "{} components for {} summands",
                s.len(),
                self.parts.len()
            )));
        }
        self.parts.iter().zip(s).map(|(f, c)| f.encode(c)).collect()
    }
}

/// A point `(n, x)` of `ω × 2^ω`.
#[derive(Clone, Debug)]
pub struct IndexedStream {
    pub n: u64,
    pub x: Stream<u8>,
}

impl IndexedStream {
    pub fn new(n: u64, x: Stream<u8>) -> Self {
        IndexedStream { n, x }
    }
}

impl fmt::Display for IndexedStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.x)
    }
}

/// A family over `2^ω × Y` built from one over `(ω × 2^ω) × Y`.
///
/// Parameters are first re-indexed so the whole space sits at `(0, 0⃗)`:
/// rows `0` and `n_w` swap and every row is XOR-ed with `x_w`, where
/// `(n_w, x_w)` encodes the whole space. Then `(n, x)` with `n > 0` becomes the
/// `S`-point `0^n ⋆ x`, `(0, x)` becomes `x`, and `S` is carried onto `2^ω` by
/// its Brouwer coding `φ`.
pub struct STransfer<F> {
    pub inner: F,
    whole: IndexedStream,
    phi: BrouwerMap<SPresentation>,
}

pub fn s_transfer<F>(inner: F, whole: &F::Set, probes: &[F::Point], depth: usize) -> Result<STransfer<F>>
where
    F: UniversalFamily<Param = IndexedStream>,
{
    let w = inner.encode(whole)?;
    for p in probes {
        let m = inner.member(&w, p, depth)?;
        if !m.is_in() {
            return Err(Error::PreconditionViolation(format!(
                "section at {w} is not the whole space ({m:?} at a probe)"
            )));
        }
    }
    Ok(STransfer {
        inner,
        whole: w,
        phi: BrouwerMap::new(SPresentation),
    })
}

/// Index of the first 1 of a periodic word, if any.
fn first_one(p: &Periodic<u8>) -> Option<usize> {
    (0..p.tail_start() + p.period().len()).find(|i| p.letter(*i) == 1)
}

impl<F: UniversalFamily<Param = IndexedStream>> STransfer<F> {
    /// The involution between re-indexed and original parameters.
    pub fn reindex(&self, p: &IndexedStream) -> IndexedStream {
        let n_w = self.whole.n;
        let n = if p.n == 0 {
            n_w
        } else if p.n == n_w {
            0
        } else {
            p.n
        };
        IndexedStream::new(n, xor_bits(&p.x, &self.whole.x))
    }

    /// `φ⁻¹(z)` as a re-indexed parameter: `0^n 11 v ↦ (n, v)` for `n > 0`,
    /// `0^n 10 v ↦ (0, 0^n 1 v)`, and a word starting with 1 or equal to
    /// `0⃗` stands for itself. `None` when `depth` letters show only zeros.
    pub fn decode(&self, z: &Stream<u8>, depth: usize) -> Result<Option<IndexedStream>> {
        let k = match z.as_periodic() {
            Some(p) => match first_one(p) {
                Some(k) => k,
                None => return Ok(Some(IndexedStream::new(0, z.clone()))),
            },
            None => match z.truncate(depth)?.iter().position(|b| *b == 1) {
                Some(k) => k,
                None => return Ok(None),
            },
        };
        if k == 0 {
            return Ok(Some(IndexedStream::new(0, z.clone())));
        }
        let rest = z.shift(k + 2);
        Ok(Some(if z.letter(k + 1)? == 1 {
            IndexedStream::new(k as u64, rest)
        } else {
            let mut head = vec![0; k];
            head.push(1);
            IndexedStream::new(0, rest.prepend(head))
        }))
    }

    /// `φ` of the `S`-point for a re-indexed parameter.
    pub fn code(&self, p: &IndexedStream) -> Stream<u8> {
        if p.n > 0 {
            let mut head = vec![0; p.n as usize];
            head.extend([1, 1]);
            return p.x.prepend(head);
        }
        match p.x.as_periodic() {
            Some(x) => match first_one(x) {
                Some(k) if k > 0 => {
                    let mut head = x.truncate(k + 1);
                    head.push(0);
                    Stream::Periodic(x.shift(k + 1).prepend(&head))
                }
                _ => p.x.clone(),
            },
            None => apply_stream(&self.phi, &p.x),
        }
    }

    /// The `S`-point `0^n ⋆ x`, or `x` when `n = 0`.
    pub fn s_point(p: &IndexedStream) -> Stream<u8> {
        if p.n == 0 {
            return p.x.clone();
        }
        let mut head = vec![0; p.n as usize];
        head.push(STAR);
        p.x.prepend(head)
    }
}

impl<F: UniversalFamily<Param = IndexedStream>> UniversalFamily for STransfer<F> {
    type Param = Stream<u8>;
    type Point = F::Point;
    type Set = F::Set;

    fn member(&self, z: &Stream<u8>, y: &F::Point, depth: usize) -> Result<Membership> {
        match self.decode(z, depth)? {
            None => Ok(Membership::Unknown { depth }),
            Some(p) => self.inner.member(&self.reindex(&p), y, depth),
        }
    }

    fn encode(&self, s: &F::Set) -> Result<Stream<u8>> {
        let p = self.inner.encode(s)?;
        Ok(self.code(&self.reindex(&p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baire_maps::IdentityMap;
    use crate::nice_trees::{CDesc, MarkedTreeFamily};

    #[test]
    fn identity_transfer_is_unchanged() {
        let t = transfer_uu(IdentityMap::<u8>::new(), MarkedTreeFamily);
        let c = CDesc::parse("0|11").unwrap();
        let p = MarkedTreeFamily.encode(&c).unwrap();
        for (pre, per) in [(vec![], vec![1]), (vec![0], vec![1]), (vec![1, 0], vec![0])] {
            let y = Stream::periodic(pre, per).unwrap();
            let a = t.member(&TransferParam::Input(p.clone()), &y, 6).unwrap();
            let b = MarkedTreeFamily.member(&p, &y, 6).unwrap();
            assert_eq!(a, b);
        }
        assert!(matches!(t.encode(&CDesc::empty()).unwrap(), TransferParam::PreimageOf(_)));
    }

    /// `(n, x) ∋ y` iff `y = n`, except `(0, 1⃗)`, whose section is everything.
    struct Toy;

    impl UniversalFamily for Toy {
        type Param = IndexedStream;
        type Point = u64;
        type Set = Option<u64>;

        fn member(&self, p: &IndexedStream, y: &u64, _: usize) -> Result<Membership> {
            let all = p.n == 0 && p.x.as_periodic() == Some(&Periodic::constant(1));
            Ok(if all || p.n == *y { Membership::In } else { Membership::Out })
        }

        fn encode(&self, s: &Option<u64>) -> Result<IndexedStream> {
            Ok(match s {
                None => IndexedStream::new(0, Stream::constant(1)),
                Some(n) => IndexedStream::new(*n, Stream::constant(0)),
            })
        }
    }

    #[test]
    fn s_transfer_examples() {
        let s = s_transfer(Toy, &None, &[0, 1, 2, 7], 4).unwrap();
        let whole = s.encode(&None).unwrap();
        assert_eq!(whole.as_periodic(), Some(&Periodic::constant(0)));
        assert!(s.member(&Stream::constant(0), &9, 4).unwrap().is_in());
        let z = s.code(&IndexedStream::new(2, Stream::constant(1)));
        assert_eq!(z.truncate(6).unwrap(), vec![0, 0, 1, 1, 1, 1]);
        let direct = Toy.member(&s.reindex(&IndexedStream::new(2, Stream::constant(1))), &2, 4).unwrap();
        assert_eq!(s.member(&z, &2, 4).unwrap(), direct);
        for n in [1u64, 3, 5] {
            let z = s.encode(&Some(n)).unwrap();
            for y in 0..6 {
                assert_eq!(s.member(&z, &y, 8).unwrap().is_in(), y == n, "{n} {y}");
            }
        }
        assert!(matches!(
            s_transfer(Toy, &Some(3), &[0], 4),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn s_coding_round_trips() {
        let s = s_transfer(Toy, &None, &[], 4).unwrap();
        let words = [
            IndexedStream::new(0, Stream::periodic(vec![0, 0, 1], vec![0, 1]).unwrap()),
            IndexedStream::new(0, Stream::periodic(vec![1, 0], vec![1]).unwrap()),
            IndexedStream::new(4, Stream::periodic(vec![], vec![0]).unwrap()),
            IndexedStream::new(0, Stream::constant(0)),
        ];
        for p in words {
            let z = s.code(&p);
            let via_phi = s.phi.image(&STransfer::<Toy>::s_point(&p).truncate(30).unwrap()).unwrap();
            assert_eq!(via_phi[..30], z.truncate(30).unwrap()[..]);
            let back = s.decode(&z, 30).unwrap().unwrap();
            assert_eq!(back.n, p.n);
            assert_eq!(back.x.truncate(30).unwrap(), p.x.truncate(30).unwrap());
        }
    }
}
