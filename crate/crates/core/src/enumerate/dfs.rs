//! Recursive generation of one unit.
//!
//! Free masks are decided in ascending order, include first. Including mask `m` forces
//! `m | a` for every member `a` already chosen; those unions are strictly larger than `m`
//! or contain it, so they are still undecided and are simply marked required. Required
//! masks can't be excluded. A branch is cut once its member count can no longer land on
//! the unit's layer. Every leaf is a union-closed family, each produced exactly once.

use crate::error::{Error, Result};

use super::unit::UnitSpec;

#[derive(Clone, Copy, Debug)]
struct Node {
    next: u32,
    inc: u64,
    req: u64,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    node: Node,
    /// 0 = unvisited, 1 = include child issued, 2 = both children issued.
    state: u8,
}

#[derive(Clone, Copy, Debug)]
struct Shape {
    full: u32,
    layer: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct RecursiveUnit {
    shape: Shape,
    stack: Vec<Frame>,
}

impl RecursiveUnit {
    pub fn new(unit: UnitSpec) -> Self {
        let full = (1u32 << unit.n) - 1;
        let mut node = Node { next: 1, inc: 1 | 1u64 << full, req: 0 };
        let shape = Shape { full, layer: unit.layer };
        let mut it = RecursiveUnit { shape, stack: Vec::with_capacity(full as usize + 1) };
        for j in 1..=unit.depth {
            node = if unit.includes(j) {
                shape.include(node)
            } else {
                match shape.exclude(node) {
                    Some(child) => child,
                    None => return it,
                }
            };
        }
        it.stack.push(Frame { node, state: 0 });
        it
    }

    /// Positions the iterator just past `bits`, which must be a leaf of this unit.
    pub fn resume_after(unit: UnitSpec, bits: u64) -> Result<Self> {
        let mut it = Self::new(unit);
        let shape = it.shape;
        let bad = || Error::Token(format!("family {bits:#x} is not in unit {unit:?}"));
        if bits.count_ones() != unit.layer {
            return Err(bad());
        }
        loop {
            let top = it.stack.last_mut().ok_or_else(bad)?;
            let node = top.node;
            if !shape.feasible(node) {
                return Err(bad());
            }
            if node.next == shape.full {
                if node.inc != bits {
                    return Err(bad());
                }
                it.stack.pop();
                return Ok(it);
            }
            let child = if bits >> node.next & 1 == 1 {
                top.state = 1;
                shape.include(node)
            } else {
                top.state = 2;
                shape.exclude(node).ok_or_else(bad)?
            };
            it.stack.push(Frame { node: child, state: 0 });
        }
    }
}

impl Shape {
    fn include(&self, node: Node) -> Node {
        let m = node.next;
        let mut req = node.req;
        let mut rest = node.inc;
        while rest != 0 {
            let a = rest.trailing_zeros();
            rest &= rest - 1;
            req |= 1u64 << (a | m);
        }
        Node { next: m + 1, inc: node.inc | 1u64 << m, req }
    }

    fn exclude(&self, node: Node) -> Option<Node> {
        (node.req >> node.next & 1 == 0).then_some(Node { next: node.next + 1, ..node })
    }

    #[inline]
    fn feasible(&self, node: Node) -> bool {
        let fixed = (node.inc | node.req).count_ones();
        let open = ((1u64 << self.full) - 1) & !((1u64 << node.next) - 1);
        let avail = (open & !node.req).count_ones();
        fixed <= self.layer && self.layer <= fixed + avail
    }
}

impl Iterator for RecursiveUnit {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let shape = self.shape;
        loop {
            let top = self.stack.last_mut()?;
            let node = top.node;
            match top.state {
                0 => {
                    if !shape.feasible(node) {
                        self.stack.pop();
                    } else if node.next == shape.full {
                        self.stack.pop();
                        return Some(node.inc);
                    } else {
                        top.state = 1;
                        let child = shape.include(node);
                        self.stack.push(Frame { node: child, state: 0 });
                    }
                }
                1 => {
                    top.state = 2;
                    if let Some(child) = shape.exclude(node) {
                        self.stack.push(Frame { node: child, state: 0 });
                    }
                }
                _ => {
                    self.stack.pop();
                }
            }
        }
    }
}
