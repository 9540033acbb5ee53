//! Text grammar for points, cylinders and regions.
//!
//! ```text
//! region   := "ALL" removal? | "EMPTY" | term ("|" term)* removal?
//! removal  := "\{" point ("," point)* "}"
//! term     := bits | "[" bits? "]"              cantor
//!           | "<" nats? ">"                     baire
//!           | nat ":" ("[" bits? "]" | bits)    omega-x-cantor
//!           | "(" rat "," rat ")"               reals-dyadic, rationals
//!           | "{" nats? "}"                     omega
//!           | "(" rat "," rat ")" ("x[" bits? "]")?   rationals-x-cantor
//! point    := bits "(" bits ")" | "<" nats? ">(<" nats ">)" | nat ":" bits "(" bits ")"
//!           | rat | nat | rat ":" bits "(" bits ")"
//! rat      := "-"? nat ("/" nat | "/2^" nat)?
//! ```

use std::collections::BTreeSet;

use super::{Bits, ClopenSet, Cylinder, Point, Positive, RatInterval, RegionDesc, SpaceTag};
use crate::error::{Error, Result};
use crate::rational::{is_dyadic, pow2, Q};
use crate::stream::Periodic;

/// A byte cursor over the input with whitespace skipping.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    pub(crate) fn position(&self) -> usize {
        self.pos
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.ws();
        self.rest().chars().next()
    }

    pub(crate) fn eat(&mut self, s: &str) -> bool {
        self.ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.ws();
        self.pos == self.src.len()
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn digits(&mut self) -> &'a str {
        self.ws();
        let r = self.rest();
        let n = r.bytes().take_while(u8::is_ascii_digit).count();
        self.pos += n;
        &r[..n]
    }

    pub(crate) fn nat(&mut self) -> Result<u64> {
        self.ws();
        let start = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return self.err("expected a natural number");
        }
        d.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "number too large".into(),
        })
    }

    fn bits(&mut self) -> Bits {
        self.ws();
        let r = self.rest();
        let n = r.bytes().take_while(|b| *b == b'0' || *b == b'1').count();
        self.pos += n;
        Bits(r[..n].bytes().map(|b| b - b'0').collect())
    }

    pub(crate) fn rational(&mut self) -> Result<Q> {
        let neg = self.eat("-");
        let n = self.nat()? as i128;
        let mut x = Q::from_integer(n);
        if self.eat("/") {
            let start = self.pos;
            let d = self.nat()?;
            if self.eat("^") {
                if d != 2 {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "only powers of 2 may use `^`".into(),
                    });
                }
                let k = self.nat()?;
                if k > 100 {
                    return self.err("exponent too large");
                }
                x /= pow2(k as u32);
            } else {
                if d == 0 {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "zero denominator".into(),
                    });
                }
                x /= Q::from_integer(d as i128);
            }
        }
        Ok(if neg { -x } else { x })
    }

    fn nats_until(&mut self, close: &str) -> Result<Vec<u64>> {
        let mut v = Vec::new();
        if self.eat(close) {
            return Ok(v);
        }
        loop {
            v.push(self.nat()?);
            if self.eat(close) {
                return Ok(v);
            }
            self.expect(",")?;
        }
    }

    fn bracket_bits(&mut self) -> Result<Bits> {
        self.expect("[")?;
        let b = self.bits();
        self.expect("]")?;
        Ok(b)
    }

    pub(crate) fn periodic_bits(&mut self) -> Result<Periodic<u8>> {
        let prefix = self.bits();
        self.expect("(")?;
        let period = self.bits();
        if period.is_empty() {
            return self.err("empty period");
        }
        self.expect(")")?;
        Periodic::new(prefix.0, period.0)
    }

    fn interval(&mut self, tag: SpaceTag) -> Result<RatInterval> {
        let start = self.pos;
        self.expect("(")?;
        let lo = self.rational()?;
        self.expect(",")?;
        let hi = self.rational()?;
        self.expect(")")?;
        if tag == SpaceTag::RealsDyadic && !(is_dyadic(&lo) && is_dyadic(&hi)) {
            return Err(Error::Parse {
                pos: start,
                msg: "dyadic interval endpoints required".into(),
            });
        }
        RatInterval::new(lo, hi).map_err(|_| Error::Parse {
            pos: start,
            msg: "interval must satisfy lo < hi".into(),
        })
    }

    pub(crate) fn cylinder(&mut self, tag: SpaceTag) -> Result<Cylinder> {
        match tag {
            SpaceTag::Cantor => {
                if self.peek() == Some('[') {
                    Ok(Cylinder::Cantor(self.bracket_bits()?))
                } else {
                    let b = self.bits();
                    if b.is_empty() {
                        return self.err("expected a binary word or `[]`");
                    }
                    Ok(Cylinder::Cantor(b))
                }
            }
            SpaceTag::Baire => {
                self.expect("<")?;
                Ok(Cylinder::Baire(self.nats_until(">")?))
            }
            SpaceTag::OmegaCantor => {
                let row = self.nat()?;
                self.expect(":")?;
                let word = if self.peek() == Some('[') {
                    self.bracket_bits()?
                } else {
                    self.bits()
                };
                Ok(Cylinder::OmegaCantor { row, word })
            }
            SpaceTag::RealsDyadic => Ok(Cylinder::Dyadic(self.interval(tag)?)),
            SpaceTag::Rationals => Ok(Cylinder::Rational(self.interval(tag)?)),
            SpaceTag::Omega => {
                self.expect("{")?;
                let v = self.nats_until("}")?;
                Ok(Cylinder::Omega(v.into_iter().collect::<BTreeSet<u64>>()))
            }
            SpaceTag::RationalsCantor => {
                let interval = self.interval(tag)?;
                let word = if self.eat("x") {
                    self.bracket_bits()?
                } else {
                    Bits::empty()
                };
                Ok(Cylinder::RationalCantor { interval, word })
            }
        }
    }

    pub(crate) fn point(&mut self, tag: SpaceTag) -> Result<Point> {
        match tag {
            SpaceTag::Cantor => Ok(Point::Cantor(self.periodic_bits()?)),
            SpaceTag::Baire => {
                self.expect("<")?;
                let prefix = self.nats_until(">")?;
                self.expect("(")?;
                self.expect("<")?;
                let period = self.nats_until(">")?;
                if period.is_empty() {
                    return self.err("empty period");
                }
                self.expect(")")?;
                Ok(Point::Baire(Periodic::new(prefix, period)?))
            }
            SpaceTag::OmegaCantor => {
                let row = self.nat()?;
                self.expect(":")?;
                Ok(Point::OmegaCantor(row, self.periodic_bits()?))
            }
            SpaceTag::RealsDyadic => Ok(Point::Real(self.rational()?)),
            SpaceTag::Rationals => Ok(Point::Rational(self.rational()?)),
            SpaceTag::Omega => Ok(Point::Omega(self.nat()?)),
            SpaceTag::RationalsCantor => {
                let x = self.rational()?;
                self.expect(":")?;
                Ok(Point::RationalCantor(x, self.periodic_bits()?))
            }
        }
    }

    fn removal(&mut self, tag: SpaceTag) -> Result<Vec<Point>> {
        let mut pts = Vec::new();
        if !self.eat("\\") {
            return Ok(pts);
        }
        self.expect("{")?;
        if self.eat("}") {
            return Ok(pts);
        }
        loop {
            pts.push(self.point(tag)?);
            if self.eat("}") {
                return Ok(pts);
            }
            self.expect(",")?;
        }
    }

    pub(crate) fn region(&mut self, tag: SpaceTag) -> Result<RegionDesc> {
        let start = self.pos;
        let positive = if self.eat("ALL") {
            Positive::All
        } else if self.eat("EMPTY") {
            Positive::Gens(ClopenSet::empty(tag))
        } else {
            let mut gens = vec![self.cylinder(tag)?];
            while self.eat("|") {
                gens.push(self.cylinder(tag)?);
            }
            Positive::Gens(ClopenSet::normalize(tag, gens)?)
        };
        let removed = self.removal(tag)?;
        RegionDesc::new(tag, positive, removed).map_err(|e| Error::Parse {
            pos: start,
            msg: e.to_string(),
        })
    }
}

/// Parse a region description over `tag`.
pub fn parse_region(tag: SpaceTag, s: &str) -> Result<RegionDesc> {
    let mut c = Cursor::new(s);
    let r = c.region(tag)?;
    c.finish()?;
    Ok(r)
}

/// Parse a clopen set (a region without removals and not `ALL`, except over
/// cantor and baire where `ALL` is a single cylinder).
pub fn parse_clopen(tag: SpaceTag, s: &str) -> Result<ClopenSet> {
    let r = parse_region(tag, s)?;
    if !r.removed().is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "a clopen set has no removals".into(),
        });
    }
    match r.positive() {
        Positive::Gens(c) => Ok(c.clone()),
        Positive::All => ClopenSet::whole(tag).map_err(|e| Error::Parse {
            pos: 0,
            msg: e.to_string(),
        }),
    }
}

/// Parse one point over `tag`.
pub fn parse_point(tag: SpaceTag, s: &str) -> Result<Point> {
    let mut c = Cursor::new(s);
    let p = c.point(tag)?;
    c.finish()?;
    Ok(p)
}

/// Parse one cylinder over `tag`.
pub fn parse_cylinder(tag: SpaceTag, s: &str) -> Result<Cylinder> {
    let mut c = Cursor::new(s);
    let p = c.cylinder(tag)?;
    c.finish()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    #[test]
    fn regions() {
        let r = parse_region(SpaceTag::Cantor, "0|11").unwrap();
        assert_eq!(r.to_string(), "0|11");
        let r = parse_region(SpaceTag::Cantor, "01 | 00").unwrap();
        assert_eq!(r.to_string(), "0");
        let r = parse_region(SpaceTag::Cantor, "ALL\\{0(1),(0)}").unwrap();
        assert_eq!(r.removed().len(), 2);
        let r = parse_region(SpaceTag::RealsDyadic, "(0,1/2^2)|(1/2,1)").unwrap();
        assert!(r.contains(&Point::Real(q(1, 8))));
        let r = parse_region(SpaceTag::OmegaCantor, "ALL\\{1:(0)}").unwrap();
        assert!(!r.contains(&Point::OmegaCantor(1, Periodic::constant(0))));
        let r = parse_region(SpaceTag::Baire, "<0>\\{<>(<0>)}").unwrap();
        assert_eq!(r.to_string(), "<0>\\{<>(<0>)}");
        let r = parse_region(SpaceTag::Rationals, "(-1/3,2)").unwrap();
        assert!(r.contains(&Point::Rational(int(0))));
        let r = parse_region(SpaceTag::RationalsCantor, "(0,1)x[01]").unwrap();
        assert_eq!(r.to_string(), "(0,1)x[01]");
        assert!(parse_region(SpaceTag::Omega, "{1,2}").is_ok());
        assert!(parse_region(SpaceTag::Cantor, "EMPTY").unwrap().is_empty());
    }

    #[test]
    fn errors_carry_position() {
        match parse_region(SpaceTag::Cantor, "0|2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_region(SpaceTag::RealsDyadic, "(0,1/3)"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(parse_region(SpaceTag::Omega, "ALL\\{3}").is_err());
        assert!(parse_point(SpaceTag::Cantor, "01()").is_err());
    }
}
