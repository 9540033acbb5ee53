//! Closed subsets of `2^ω` coded by nice trees, the isolated point of the
//! tree space, and the empty-section cover search.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::family::{Membership, UniversalFamily};
use crate::spaces::{parse::Cursor, Bits, ClopenSet, Cylinder, Point, SpaceTag};
use crate::stream::{Periodic, Stream};

/// A closed subset of `2^ω`: a clopen part together with finitely many
/// eventually periodic points.
///
/// Canonical: points inside the clopen part are dropped, the rest sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CDesc {
    clopen: ClopenSet,
    points: Vec<Periodic<u8>>,
}

impl CDesc {
    pub fn new(clopen: ClopenSet, points: Vec<Periodic<u8>>) -> Result<Self> {
        if clopen.tag() != SpaceTag::Cantor {
            return Err(Error::TagMismatch {
                expected: SpaceTag::Cantor,
                found: clopen.tag(),
            });
        }
        let mut points: Vec<Periodic<u8>> = points
            .into_iter()
            .filter(|p| !clopen.contains(&Point::Cantor(p.clone())))
            .collect();
        points.sort();
        points.dedup();
        Ok(CDesc { clopen, points })
    }

    pub fn empty() -> Self {
        CDesc {
            clopen: ClopenSet::empty(SpaceTag::Cantor),
            points: Vec::new(),
        }
    }

    pub fn from_clopen(clopen: ClopenSet) -> Result<Self> {
        CDesc::new(clopen, Vec::new())
    }

    pub fn clopen(&self) -> &ClopenSet {
        &self.clopen
    }

    pub fn points(&self) -> &[Periodic<u8>] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.clopen.is_empty() && self.points.is_empty()
    }

    pub fn contains(&self, x: &Periodic<u8>) -> bool {
        self.clopen.contains(&Point::Cantor(x.clone())) || self.points.contains(x)
    }

    /// Whether `[s]` meets the set.
    pub fn meets(&self, s: &Bits) -> bool {
        self.clopen.meets_word(s) || self.points.iter().any(|p| p.extends(&s.0))
    }

    /// Parse `term|term|...`; a term is a cylinder (`01`, `[]`) or a point (`0(1)`).
    pub fn parse(s: &str) -> Result<CDesc> {
        let mut c = Cursor::new(s);
        if c.eat("EMPTY") {
            c.finish()?;
            return Ok(CDesc::empty());
        }
        let mut gens = Vec::new();
        let mut points = Vec::new();
        loop {
            if c.eat("ALL") {
                gens.push(Cylinder::Cantor(Bits::empty()));
            } else if term_is_point(s, &mut c) {
                match c.point(SpaceTag::Cantor)? {
                    Point::Cantor(p) => points.push(p),
                    _ => unreachable!(),
                }
            } else {
                gens.push(c.cylinder(SpaceTag::Cantor)?);
            }
            if !c.eat("|") {
                break;
            }
        }
        c.finish()?;
        CDesc::new(ClopenSet::normalize(SpaceTag::Cantor, gens)?, points)
    }
}

fn term_is_point(src: &str, c: &mut Cursor<'_>) -> bool {
    c.ws();
    let rest = &src[c.position()..];
    let end = rest.find('|').unwrap_or(rest.len());
    rest[..end].contains('(')
}

impl fmt::Display for CDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = if self.clopen.is_empty() {
            Vec::new()
        } else {
            vec![self.clopen.to_string()]
        };
        parts.extend(self.points.iter().map(|p| p.to_string()));
        if parts.is_empty() {
            f.write_str("EMPTY")
        } else {
            f.write_str(&parts.join("|"))
        }
    }
}

type NodeRule = Arc<dyn Fn(&Bits) -> bool + Send + Sync>;

/// How node membership is decided.
#[derive(Clone)]
pub enum TreeRule {
    /// The full tree of a closed set: `s ∈ T` iff `[s]` meets it.
    Closed(CDesc),
    /// An arbitrary decidable node predicate, not necessarily nice.
    Custom(NodeRule),
}

/// A subtree of `2^{<ω}` given by a decidable node predicate.
#[derive(Clone)]
pub struct NiceTreeDesc {
    rule: TreeRule,
}

impl NiceTreeDesc {
    pub fn custom(f: impl Fn(&Bits) -> bool + Send + Sync + 'static) -> Self {
        NiceTreeDesc {
            rule: TreeRule::Custom(Arc::new(f)),
        }
    }

    pub fn empty() -> Self {
        encode_closed(&CDesc::empty())
    }

    pub fn rule(&self) -> &TreeRule {
        &self.rule
    }

    /// The closed set the tree was encoded from, when known.
    pub fn source(&self) -> Option<&CDesc> {
        match &self.rule {
            TreeRule::Closed(c) => Some(c),
            TreeRule::Custom(_) => None,
        }
    }

    pub fn contains(&self, s: &Bits) -> bool {
        match &self.rule {
            TreeRule::Closed(c) => c.meets(s),
            TreeRule::Custom(f) => f(s),
        }
    }

    /// Nodes of length exactly `d`.
    pub fn level(&self, d: usize) -> BTreeSet<Bits> {
        tree_levels(self, d)
            .nodes
            .into_iter()
            .filter(|s| s.len() == d)
            .collect()
    }
}

impl fmt::Debug for NiceTreeDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NiceTreeDesc({self})")
    }
}

impl fmt::Display for NiceTreeDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            TreeRule::Closed(c) => write!(f, "T[{c}]"),
            TreeRule::Custom(_) => f.write_str("T[custom]"),
        }
    }
}

/// The full tree `{s : [s] ∩ C ≠ ∅}` of a closed set.
pub fn encode_closed(c: &CDesc) -> NiceTreeDesc {
    NiceTreeDesc {
        rule: TreeRule::Closed(c.clone()),
    }
}

/// Outcome of checking the nice-tree conditions up to a depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Niceness {
    Pass,
    /// A member node of length `< d` with no member child.
    MissingChild(Bits),
    /// A member node whose parent is not a member.
    NotDownwardClosed(Bits),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeLevels {
    pub depth: usize,
    pub nodes: BTreeSet<Bits>,
    pub verdict: Niceness,
}

/// All member nodes of length `<= d` and the niceness verdict at depth `d`.
///
/// Encoded trees are explored from the root; custom rules are scanned over
/// all of `2^{<=d}` so that stray members are found.
pub fn tree_levels(t: &NiceTreeDesc, d: usize) -> TreeLevels {
    let mut nodes = BTreeSet::new();
    match &t.rule {
        TreeRule::Closed(_) => {
            let mut queue = VecDeque::new();
            if t.contains(&Bits::empty()) {
                queue.push_back(Bits::empty());
            }
            while let Some(s) = queue.pop_front() {
                if s.len() < d {
                    for b in 0..2 {
                        let c = s.child(b);
                        if t.contains(&c) {
                            queue.push_back(c);
                        }
                    }
                }
                nodes.insert(s);
            }
        }
        TreeRule::Custom(_) => {
            nodes.extend(Bits::all_up_to(d).into_iter().filter(|s| t.contains(s)));
        }
    }
    let mut order: Vec<&Bits> = nodes.iter().collect();
    order.sort_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)));
    let mut verdict = Niceness::Pass;
    for s in &order {
        if !s.is_empty() && !nodes.contains(&Bits(s.0[..s.len() - 1].to_vec())) {
            verdict = Niceness::NotDownwardClosed((*s).clone());
            break;
        }
    }
    if verdict == Niceness::Pass {
        for s in &order {
            if s.len() < d && !nodes.contains(&s.child(0)) && !nodes.contains(&s.child(1)) {
                verdict = Niceness::MissingChild((*s).clone());
                break;
            }
        }
    }
    TreeLevels {
        depth: d,
        nodes,
        verdict,
    }
}

/// Semidecision of `x ∈ [T]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedVerdict {
    /// Every truncation of length `<= budget` is a node.
    InAtBudget(usize),
    /// `x↾n ∉ T` for this least `n`.
    OutAt(usize),
}

pub fn member_closed(t: &NiceTreeDesc, x: &Stream<u8>, budget: usize) -> Result<ClosedVerdict> {
    let w = x.truncate(budget)?;
    for n in 0..=budget {
        if !t.contains(&Bits(w[..n].to_vec())) {
            return Ok(ClosedVerdict::OutAt(n));
        }
    }
    Ok(ClosedVerdict::InAtBudget(budget))
}

/// The clopen set `⋃{[s] : s ∈ T, |s| = d}`.
pub fn decode_clopen(t: &NiceTreeDesc, d: usize) -> ClopenSet {
    let gens = t.level(d).into_iter().map(Cylinder::Cantor).collect();
    ClopenSet::normalize(SpaceTag::Cantor, gens).expect("cantor generators")
}

/// A basic open set `N(F0, F1)` of trees: those containing every node of
/// `F0` and no node of `F1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NTNeighborhood {
    pub f0: BTreeSet<Bits>,
    pub f1: BTreeSet<Bits>,
}

impl NTNeighborhood {
    pub fn new(f0: impl IntoIterator<Item = Bits>, f1: impl IntoIterator<Item = Bits>) -> Self {
        NTNeighborhood {
            f0: f0.into_iter().collect(),
            f1: f1.into_iter().collect(),
        }
    }

    pub fn contains(&self, t: &NiceTreeDesc) -> bool {
        self.f0.iter().all(|s| t.contains(s)) && !self.f1.iter().any(|s| t.contains(s))
    }

    pub fn intersect(&self, other: &NTNeighborhood) -> NTNeighborhood {
        NTNeighborhood {
            f0: self.f0.union(&other.f0).cloned().collect(),
            f1: self.f1.union(&other.f1).cloned().collect(),
        }
    }

    fn forbidden(&self) -> ClopenSet {
        ClopenSet::normalize(
            SpaceTag::Cantor,
            self.f1.iter().cloned().map(Cylinder::Cantor).collect(),
        )
        .expect("cantor generators")
    }

    /// Whether some nice tree in the neighbourhood contains `s` together with `F0`.
    fn admits(&self, s: &Bits) -> bool {
        if self.f0.iter().any(|a| self.f1.contains(a)) {
            return false;
        }
        let forbidden = self.forbidden();
        self.f0.iter().chain(std::iter::once(s)).all(|a| {
            !self.f1.iter().any(|f| f.is_prefix_of(a)) && !forbidden.covers_word(a)
        })
    }

    /// Whether the empty tree is the only nice tree in the neighbourhood.
    pub fn only_empty_tree(&self) -> bool {
        self.f0.is_empty() && self.forbidden().covers_word(&Bits::empty())
    }
}

impl fmt::Display for NTNeighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &BTreeSet<Bits>| {
            if s.is_empty() {
                "∅".to_string()
            } else {
                let v: Vec<String> = s.iter().map(|b| b.to_string()).collect();
                format!("{{{}}}", v.join(","))
            }
        };
        write!(f, "N({},{})", show(&self.f0), show(&self.f1))
    }
}

/// `N(∅, {ε})`: its only nice tree is the empty tree.
pub fn nt_isolation_certificate() -> NTNeighborhood {
    NTNeighborhood::new([], [Bits::empty()])
}

/// Result of asking for two distinct nice trees in a neighbourhood.
#[derive(Clone, Debug)]
pub enum NtSplit {
    Pair {
        first: NiceTreeDesc,
        second: NiceTreeDesc,
        /// Shortlex-least node in exactly one of the two trees.
        node: Bits,
    },
    /// The empty tree is the only nice tree in the neighbourhood.
    OnlyEmptyTree,
    /// No nice tree lies in the neighbourhood.
    Empty,
}

/// Two distinct nice trees in `N(F0, F1)`, or a certificate that there are not two.
///
/// With `D` one more than the longest constraint node, candidate trees are
/// the full trees of nonempty leaf sets `L ⊆ 2^D`, taken by size then
/// lexicographically; the first two admissible ones are returned.
pub fn nt_split_neighborhood(n: &NTNeighborhood) -> Result<NtSplit> {
    if let Some(s) = n.f0.intersection(&n.f1).next() {
        return Err(Error::InconsistentNeighborhood(format!(
            "node {s} is both required and forbidden"
        )));
    }
    for s in &n.f0 {
        if let Some(f) = n.f1.iter().find(|f| f.is_prefix_of(s)) {
            return Err(Error::InconsistentNeighborhood(format!(
                "required node {s} extends forbidden node {f}"
            )));
        }
    }
    let m = n.f0.iter().chain(n.f1.iter()).map(Bits::len).max().unwrap_or(0);
    let d = m + 1;
    let leaves = Bits::all_of_length(d);
    let valid = |set: &[usize]| {
        n.f0
            .iter()
            .all(|s| set.iter().any(|&i| s.is_prefix_of(&leaves[i])))
            && set
                .iter()
                .all(|&i| !n.f1.iter().any(|f| f.is_prefix_of(&leaves[i])))
    };
    let mut found: Vec<Vec<usize>> = Vec::new();
    let max_size = (n.f0.len().max(1) + 1).min(leaves.len());
    'sizes: for k in 1..=max_size {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if valid(&idx) {
                found.push(idx.clone());
                if found.len() == 2 {
                    break 'sizes;
                }
            }
            if !next_combination(&mut idx, leaves.len()) {
                break;
            }
        }
    }
    match found.len() {
        2 => {
            let tree = |set: &[usize]| {
                let gens = set.iter().map(|&i| Cylinder::Cantor(leaves[i].clone())).collect();
                let c = ClopenSet::normalize(SpaceTag::Cantor, gens).expect("cantor generators");
                encode_closed(&CDesc::from_clopen(c).expect("cantor"))
            };
            let first = tree(&found[0]);
            let second = tree(&found[1]);
            let a = tree_levels(&first, d).nodes;
            let b = tree_levels(&second, d).nodes;
            let node = a
                .symmetric_difference(&b)
                .min_by(|x, y| (x.len(), *x).cmp(&(y.len(), *y)))
                .cloned()
                .expect("distinct leaf sets give distinct trees");
            Ok(NtSplit::Pair {
                first,
                second,
                node,
            })
        }
        0 if n.f0.is_empty() => Ok(NtSplit::OnlyEmptyTree),
        0 => Ok(NtSplit::Empty),
        _ => unreachable!("a valid leaf set always has a valid sibling variant"),
    }
}

/// Advance `idx` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Index of a node in the shortlex enumeration of `2^{<ω}`:
/// `code(w) = 2^{|w|} - 1 + value(w)`.
pub fn node_code(w: &Bits) -> u64 {
    let v = w.0.iter().fold(0u64, |acc, b| acc * 2 + *b as u64);
    (1u64 << w.len()) - 1 + v
}

/// Inverse of [`node_code`].
pub fn code_node(n: u64) -> Bits {
    let len = 63 - (n + 1).leading_zeros() as usize;
    let v = n + 1 - (1u64 << len);
    Bits((0..len).map(|i| ((v >> (len - 1 - i)) & 1) as u8).collect())
}

/// The closed set `C ⊆ 2^ω × 2^ω` with `(x, y) ∈ C` iff every prefix of `y`
/// is marked by `x`, node `s` being marked iff `x(code(s)) = 1`.
///
/// Every closed set is a section (at the characteristic word of its full
/// tree), but not uniquely.
#[derive(Clone, Copy, Debug, Default)]
pub struct MarkedTreeFamily;

impl MarkedTreeFamily {
    pub fn marked(x: &Stream<u8>, s: &Bits) -> Result<bool> {
        Ok(x.letter(node_code(s) as usize)? == 1)
    }
}

impl UniversalFamily for MarkedTreeFamily {
    type Param = Stream<u8>;
    type Point = Stream<u8>;
    type Set = CDesc;

    fn member(&self, x: &Stream<u8>, y: &Stream<u8>, depth: usize) -> Result<Membership> {
        let w = y.truncate(depth)?;
        for n in 0..=depth {
            if !MarkedTreeFamily::marked(x, &Bits(w[..n].to_vec()))? {
                return Ok(Membership::Out);
            }
        }
        Ok(Membership::Unknown { depth })
    }

    fn encode(&self, c: &CDesc) -> Result<Stream<u8>> {
        let c = c.clone();
        Ok(Stream::from_letter_fn(move |i| c.meets(&code_node(i as u64)) as u8))
    }
}

/// The nice-tree family `{(T, x) : x ∈ [T]}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct NiceTreeFamily;

impl UniversalFamily for NiceTreeFamily {
    type Param = NiceTreeDesc;
    type Point = Stream<u8>;
    type Set = CDesc;

    fn member(&self, t: &NiceTreeDesc, y: &Stream<u8>, depth: usize) -> Result<Membership> {
        if let (Some(c), Some(p)) = (t.source(), y.as_periodic()) {
            return Ok(if c.contains(p) {
                Membership::In
            } else {
                Membership::Out
            });
        }
        Ok(match member_closed(t, y, depth)? {
            ClosedVerdict::OutAt(_) => Membership::Out,
            ClosedVerdict::InAtBudget(_) => Membership::Unknown { depth },
        })
    }

    fn encode(&self, c: &CDesc) -> Result<NiceTreeDesc> {
        Ok(encode_closed(c))
    }
}

/// The pieces of a closed family that the empty-section cover search needs.
pub trait IsolationSearch {
    type Param: Clone;
    type Nbhd: Clone + fmt::Display + fmt::Debug;

    /// Depth-`d` nodes `v` such that `[v]` is not yet excluded from the section at `x0`.
    fn section_nodes(&self, x0: &Self::Param, d: usize) -> Vec<Bits>;
    /// Basic neighbourhoods of `x0` at depth `d`, in canonical order.
    fn neighborhoods(&self, x0: &Self::Param, d: usize) -> Vec<Self::Nbhd>;
    /// Exact: whether `N × [v]` misses the closed set.
    fn rect_misses(&self, n: &Self::Nbhd, v: &Bits) -> bool;
    fn intersect(&self, a: &Self::Nbhd, b: &Self::Nbhd) -> Self::Nbhd;
    /// Whether `x0` is the only parameter in `n`.
    fn isolates(&self, n: &Self::Nbhd, x0: &Self::Param) -> bool;
    /// A parameter of `n` other than `x0`, rendered.
    fn other_param(&self, n: &Self::Nbhd, x0: &Self::Param) -> Option<String>;
}

pub type Cover<N> = Vec<(N, Bits)>;

#[derive(Clone, Debug)]
pub enum Isolation<N> {
    /// Rectangles `N × [v]` missing the set, the `[v]` covering `2^ω`; their
    /// intersection isolates the parameter.
    Isolated { cover: Cover<N>, neighborhood: N },
    /// No isolating neighbourhood within the depth.
    DepthInsufficient {
        depth: usize,
        cover: Option<Cover<N>>,
        neighborhood: Option<N>,
        witness: String,
    },
}

impl<N> Isolation<N> {
    pub fn is_isolated(&self) -> bool {
        matches!(self, Isolation::Isolated { .. })
    }
}

/// Cover `{x0} × 2^ω` by rectangles missing a closed set and test whether
/// the intersection of their parameter sides isolates `x0`.
///
/// Cylinders of the base are refined breadth-first, lexicographically within
/// a level, down to depth `d`.
pub fn empty_section_isolation<S: IsolationSearch>(
    s: &S,
    x0: &S::Param,
    d: usize,
) -> Result<Isolation<S::Nbhd>> {
    let alive = s.section_nodes(x0, d);
    if let Some(v) = alive.first() {
        return Err(Error::PreconditionViolation(format!(
            "section at the parameter is not empty at depth {d}: it meets [{v}]"
        )));
    }
    let nbhds = s.neighborhoods(x0, d);
    let mut cover = Vec::new();
    let mut queue = VecDeque::from([Bits::empty()]);
    while let Some(v) = queue.pop_front() {
        match nbhds.iter().find(|n| s.rect_misses(n, &v)) {
            Some(n) => cover.push((n.clone(), v)),
            None if v.len() < d => {
                queue.push_back(v.child(0));
                queue.push_back(v.child(1));
            }
            None => {
                return Ok(Isolation::DepthInsufficient {
                    depth: d,
                    cover: None,
                    neighborhood: None,
                    witness: format!("no neighborhood at depth {d} clears [{v}]"),
                })
            }
        }
    }
    let mut meet = cover[0].0.clone();
    for (n, _) in &cover[1..] {
        meet = s.intersect(&meet, n);
    }
    if s.isolates(&meet, x0) {
        Ok(Isolation::Isolated {
            cover,
            neighborhood: meet,
        })
    } else {
        let witness = s
            .other_param(&meet, x0)
            .unwrap_or_else(|| "neighborhood is not a singleton".into());
        Ok(Isolation::DepthInsufficient {
            depth: d,
            cover: Some(cover),
            neighborhood: Some(meet),
            witness,
        })
    }
}

/// The search over the nice-tree family. Neighbourhoods use nodes shorter
/// than `d` with at most two constraints.
#[derive(Clone, Copy, Debug, Default)]
pub struct NtSearch;

impl IsolationSearch for NtSearch {
    type Param = NiceTreeDesc;
    type Nbhd = NTNeighborhood;

    fn section_nodes(&self, x0: &NiceTreeDesc, d: usize) -> Vec<Bits> {
        x0.level(d).into_iter().collect()
    }

    fn neighborhoods(&self, x0: &NiceTreeDesc, d: usize) -> Vec<NTNeighborhood> {
        let nodes = if d == 0 { Vec::new() } else { Bits::all_up_to(d - 1) };
        let split = |set: &[&Bits]| {
            let (a, b): (Vec<&Bits>, Vec<&Bits>) = set.iter().partition(|s| x0.contains(s));
            NTNeighborhood::new(a.into_iter().cloned(), b.into_iter().cloned())
        };
        let mut out = vec![NTNeighborhood::default()];
        for a in &nodes {
            out.push(split(&[a]));
        }
        for (i, a) in nodes.iter().enumerate() {
            for b in &nodes[i + 1..] {
                out.push(split(&[a, b]));
            }
        }
        out
    }

    fn rect_misses(&self, n: &NTNeighborhood, v: &Bits) -> bool {
        !n.admits(v)
    }

    fn intersect(&self, a: &NTNeighborhood, b: &NTNeighborhood) -> NTNeighborhood {
        a.intersect(b)
    }

    fn isolates(&self, n: &NTNeighborhood, x0: &NiceTreeDesc) -> bool {
        !x0.contains(&Bits::empty()) && n.only_empty_tree()
    }

    fn other_param(&self, n: &NTNeighborhood, x0: &NiceTreeDesc) -> Option<String> {
        match nt_split_neighborhood(n).ok()? {
            NtSplit::Pair { first, second, .. } => {
                let x0_levels = tree_levels(x0, 4).nodes;
                let pick = if tree_levels(&first, 4).nodes != x0_levels {
                    first
                } else {
                    second
                };
                Some(pick.to_string())
            }
            _ => None,
        }
    }
}

/// The search over the marked-tree family, neighbourhoods being the
/// cylinders `[x0↾m]`, `m <= d`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MarkedSearch;

impl MarkedSearch {
    /// Whether some `x ⊇ u` and some `y ∈ [v]` have every prefix of `y` marked.
    fn admits(u: &Bits, v: &Bits) -> bool {
        let fixed = |w: &Bits| (node_code(w) as usize) < u.len();
        let marked = |w: &Bits| u.0[node_code(w) as usize] == 1;
        for n in 0..=v.len() {
            let w = Bits(v.0[..n].to_vec());
            if fixed(&w) && !marked(&w) {
                return false;
            }
        }
        fn extend(w: &Bits, fixed: &dyn Fn(&Bits) -> bool, marked: &dyn Fn(&Bits) -> bool) -> bool {
            if !fixed(w) {
                return true;
            }
            (0..2).any(|b| {
                let c = w.child(b);
                (!fixed(&c) || marked(&c)) && extend(&c, fixed, marked)
            })
        }
        extend(v, &fixed, &marked)
    }
}

impl IsolationSearch for MarkedSearch {
    type Param = Periodic<u8>;
    type Nbhd = Bits;

    fn section_nodes(&self, x0: &Periodic<u8>, d: usize) -> Vec<Bits> {
        let marked = |w: &Bits| x0.letter(node_code(w) as usize) == 1;
        Bits::all_of_length(d)
            .into_iter()
            .filter(|v| (0..=d).all(|n| marked(&Bits(v.0[..n].to_vec()))))
            .collect()
    }

    fn neighborhoods(&self, x0: &Periodic<u8>, d: usize) -> Vec<Bits> {
        (0..=d).map(|m| Bits(x0.truncate(m))).collect()
    }

    fn rect_misses(&self, u: &Bits, v: &Bits) -> bool {
        !MarkedSearch::admits(u, v)
    }

    fn intersect(&self, a: &Bits, b: &Bits) -> Bits {
        if a.len() >= b.len() {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn isolates(&self, _: &Bits, _: &Periodic<u8>) -> bool {
        false
    }

    fn other_param(&self, u: &Bits, x0: &Periodic<u8>) -> Option<String> {
        let mut w = u.0.clone();
        w.push(1 - x0.letter(u.len()));
        Some(Periodic::padded(w, 0).to_string())
    }
}
