//! Evaluation of a continuous bijection `ω^ω → X` given by a tree of cells:
//! `f(x)` is the intersection of the cells along `x`, or a terminal
//! evaluator's value once `x` reaches a terminal node.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::{int, Q};
use crate::stream::Stream;

/// The role of a node `s ∈ ω^<ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Every `s⌢(n)` is in the tree and the child cells partition `C_s`.
    Inner,
    /// `C_s` is compact and evaluated by `f_s`.
    Terminal,
    Absent,
}

type KindFn = Arc<dyn Fn(&[u64]) -> NodeKind + Send + Sync>;
type CellFn<C> = Arc<dyn Fn(&[u64]) -> C + Send + Sync>;
type TerminalFn<C> = Arc<dyn Fn(&[u64], &Stream<u64>, &Q) -> Result<C> + Send + Sync>;

/// A tree `T ⊆ ω^<ω` with cells `C_s`, where cells at depth `n >= 1` have
/// diameter below `1/n`.
pub struct CellTree<C> {
    kind: KindFn,
    cell: CellFn<C>,
    terminal: TerminalFn<C>,
}

impl<C> Clone for CellTree<C> {
    fn clone(&self) -> Self {
        CellTree {
            kind: self.kind.clone(),
            cell: self.cell.clone(),
            terminal: self.terminal.clone(),
        }
    }
}

impl<C> CellTree<C> {
    pub fn new(
        kind: impl Fn(&[u64]) -> NodeKind + Send + Sync + 'static,
        cell: impl Fn(&[u64]) -> C + Send + Sync + 'static,
        terminal: impl Fn(&[u64], &Stream<u64>, &Q) -> Result<C> + Send + Sync + 'static,
    ) -> Self {
        CellTree {
            kind: Arc::new(kind),
            cell: Arc::new(cell),
            terminal: Arc::new(terminal),
        }
    }

    pub fn kind(&self, s: &[u64]) -> NodeKind {
        (self.kind)(s)
    }

    pub fn cell(&self, s: &[u64]) -> C {
        (self.cell)(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellEval<C> {
    /// `C_s` for the shallowest `s = x↾n` with diameter below the precision.
    Cell { node: Vec<u64>, cell: C },
    /// `f_s(x)` at the requested precision.
    Terminal { node: Vec<u64>, value: C },
}

pub fn cell_tree_eval<C>(ct: &CellTree<C>, x: &Stream<u64>, precision: &Q) -> Result<CellEval<C>> {
    if *precision <= int(0) {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    for n in 0.. {
        let s = x.truncate(n)?;
        match ct.kind(&s) {
            NodeKind::Absent => {
                return Err(Error::DomainViolation {
                    node: format!("{s:?}"),
                })
            }
            NodeKind::Terminal => {
                let value = (ct.terminal)(&s, x, precision)?;
                return Ok(CellEval::Terminal { node: s, value });
            }
            NodeKind::Inner if n >= 1 && int(1) / int(n as i128) <= *precision => {
                let cell = ct.cell(&s);
                return Ok(CellEval::Cell { node: s, cell });
            }
            NodeKind::Inner => {}
        }
    }
    unreachable!("the loop returns once 1/n reaches the precision")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baire_maps::{apply_stream, baire_to_cantor};
    use crate::rational::{ceil_int, q};

    fn cylinders() -> CellTree<Vec<u64>> {
        CellTree::new(
            |s| {
                if s.contains(&5) {
                    NodeKind::Absent
                } else {
                    NodeKind::Inner
                }
            },
            |s| s.to_vec(),
            |_, _, _| unreachable!("no terminal nodes"),
        )
    }

    #[test]
    fn cell_depth_matches_precision() {
        let x = Stream::from_letter_fn(|i| (i % 3) as u64);
        for (n, d) in [(1, 3), (1, 4), (2, 7), (1, 1)] {
            let p = q(n, d);
            let CellEval::Cell { node, .. } = cell_tree_eval(&cylinders(), &x, &p).unwrap() else {
                panic!("no terminal nodes");
            };
            assert_eq!(node.len() as i128, ceil_int(&(int(1) / p)));
        }
    }

    #[test]
    fn terminal_root_delegates() {
        let f = baire_to_cantor();
        let ct = CellTree::new(
            |_| NodeKind::Terminal,
            |_| Vec::new(),
            move |_, x, p| apply_stream(&f, x).truncate(ceil_int(&(int(1) / *p)) as usize),
        );
        let x = Stream::periodic(vec![3, 0], vec![1]).unwrap();
        let got = cell_tree_eval(&ct, &x, &q(1, 10)).unwrap();
        let want = apply_stream(&baire_to_cantor(), &x).truncate(10).unwrap();
        assert_eq!(got, CellEval::Terminal { node: vec![], value: want });
    }

    #[test]
    fn invalid_branch_is_a_domain_violation() {
        let x = Stream::periodic(vec![1, 5], vec![0]).unwrap();
        let err = cell_tree_eval(&cylinders(), &x, &q(1, 10)).unwrap_err();
        assert!(matches!(err, Error::DomainViolation { .. }));
    }
}
