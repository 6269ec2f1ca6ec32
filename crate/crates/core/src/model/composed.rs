use std::sync::Arc;

use super::{cell_count, Hypercube, Odometer};
use crate::error::{usage, Error, Result};

/// A node of a composition tree: either an input variable or a binary table
/// applied to the values of two subtrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Var(usize),
    Op {
        table: Arc<Hypercube>,
        left: Box<Node>,
        right: Box<Node>,
    },
}

impl Node {
    pub fn var(index: usize) -> Self {
        Node::Var(index)
    }

    pub fn op(table: Arc<Hypercube>, left: Node, right: Node) -> Self {
        Node::Op {
            table,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    fn eval(&self, point: &[u8]) -> u8 {
        match self {
            Node::Var(i) => point[*i],
            Node::Op { table, left, right } => {
                let k = table.order();
                table.at(left.eval(point) as usize * k + right.eval(point) as usize)
            }
        }
    }

    fn collect(&self, vars: &mut Vec<usize>, tables: &mut Vec<Arc<Hypercube>>) {
        match self {
            Node::Var(i) => vars.push(*i),
            Node::Op { table, left, right } => {
                tables.push(table.clone());
                left.collect(vars, tables);
                right.collect(vars, tables);
            }
        }
    }
}

/// An `n`-ary quasigroup given lazily as a tree of binary quasigroups.
///
/// Variables are numbered `0..n`; each appears at exactly one leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposedQuasigroup {
    root: Node,
    order: usize,
    arity: usize,
}

impl ComposedQuasigroup {
    pub fn new(root: Node) -> Result<Self> {
        let mut vars = Vec::new();
        let mut tables = Vec::new();
        root.collect(&mut vars, &mut tables);
        let arity = vars.len();
        vars.sort_unstable();
        if vars.iter().enumerate().any(|(i, &v)| i != v) {
            return usage("leaf variables must be exactly 0..n, each once");
        }
        let Some(first) = tables.first() else {
            return usage("a composition needs at least one binary table");
        };
        let order = first.order();
        for t in &tables {
            if t.arity() != 2 || t.order() != order {
                return usage(format!(
                    "node tables must be binary of order {order}, found k={} n={}",
                    t.order(),
                    t.arity()
                ));
            }
            if !t.is_quasigroup() {
                return usage("node table is not a quasigroup");
            }
        }
        Ok(ComposedQuasigroup { root, order, arity })
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn evaluate(&self, point: &[u8]) -> Result<u8> {
        if point.len() != self.arity {
            return usage(format!(
                "point has {} coordinates, composition has arity {}",
                point.len(),
                self.arity
            ));
        }
        if point.iter().any(|&x| x as usize >= self.order) {
            return usage(format!("coordinate out of range for order {}", self.order));
        }
        Ok(self.root.eval(point))
    }

    /// Expands the tree into an explicit table of `k^n` cells.
    pub fn materialize(&self, cap: usize) -> Result<Hypercube> {
        let cells = cell_count(self.order, self.arity);
        match cells {
            Some(c) if c <= cap => {}
            _ => {
                return Err(Error::Resource {
                    what: "materialized cells",
                    needed: (self.order as u128).saturating_pow(self.arity as u32),
                    cap: cap as u128,
                })
            }
        }
        let mut values = Vec::with_capacity(cells.unwrap_or(0));
        let mut points = Odometer::new(self.order, self.arity);
        while let Some(p) = points.next_point() {
            values.push(self.root.eval(p));
        }
        Hypercube::new(self.order, self.arity, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::DEFAULT_MATERIALIZE_CAP;

    fn z4() -> Arc<Hypercube> {
        Arc::new(Hypercube::from_fn(4, 2, |p| (p[0] + p[1]) % 4).unwrap())
    }

    #[test]
    fn single_node_psi() {
        let psi = Arc::new(fixtures::psi9());
        let c = ComposedQuasigroup::new(Node::op(psi, Node::var(0), Node::var(1))).unwrap();
        assert_eq!(c.evaluate(&[0, 1]).unwrap(), 8);
        assert_eq!(
            c.materialize(DEFAULT_MATERIALIZE_CAP).unwrap(),
            fixtures::psi9()
        );
    }

    #[test]
    fn left_nested_psi_at_origin() {
        // psi(psi(0,0),0) = psi(1,0) = 8 in the printed table
        let psi = Arc::new(fixtures::psi9());
        let inner = Node::op(psi.clone(), Node::var(0), Node::var(1));
        let c = ComposedQuasigroup::new(Node::op(psi, inner, Node::var(2))).unwrap();
        assert_eq!(c.evaluate(&[0, 0, 0]).unwrap(), 8);
    }

    #[test]
    fn ternary_group_sum() {
        let inner = Node::op(z4(), Node::var(0), Node::var(1));
        let c = ComposedQuasigroup::new(Node::op(z4(), inner, Node::var(2))).unwrap();
        let h = c.materialize(1 << 10).unwrap();
        assert_eq!(
            h,
            Hypercube::from_fn(4, 3, |p| (p[0] + p[1] + p[2]) % 4).unwrap()
        );
        assert_eq!(c.evaluate(&[0, 0, 0]).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_trees() {
        let dup = Node::op(z4(), Node::var(0), Node::var(0));
        assert!(ComposedQuasigroup::new(dup).is_err());
        let gap = Node::op(z4(), Node::var(0), Node::var(2));
        assert!(ComposedQuasigroup::new(gap).is_err());
        assert!(ComposedQuasigroup::new(Node::var(0)).is_err());
        let bad = Arc::new(Hypercube::new(2, 2, vec![0, 0, 1, 1]).unwrap());
        assert!(ComposedQuasigroup::new(Node::op(bad, Node::var(0), Node::var(1))).is_err());
    }

    #[test]
    fn arity_mismatch_and_cap() {
        let c = ComposedQuasigroup::new(Node::op(z4(), Node::var(0), Node::var(1))).unwrap();
        assert!(matches!(c.evaluate(&[0]), Err(Error::Usage(_))));
        assert!(matches!(
            c.materialize(15),
            Err(Error::Resource { cap: 15, .. })
        ));
    }
}
