//! Disjoint sets with union by size and rollback.
//!
//! No path compression, so every union can be undone in O(1). Finds cost
//! O(log n).

#[derive(Clone, Debug)]
pub struct RollbackUnionFind {
    /// Negative values are roots holding `-size`; others point at the parent.
    parent: Vec<i32>,
    history: Vec<(u32, i32)>,
}

impl RollbackUnionFind {
    pub fn new(len: usize) -> Self {
        RollbackUnionFind { parent: vec![-1; len], history: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] >= 0 {
            v = self.parent[v] as usize;
        }
        v
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Size of the set containing `v`.
    pub fn size(&self, v: usize) -> usize {
        (-self.parent[self.find(v)]) as usize
    }

    /// Checkpoint for [`rollback`](Self::rollback).
    pub fn time(&self) -> usize {
        self.history.len()
    }

    /// Merges the sets of `a` and `b`; returns false if they were already one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut x, mut y) = (self.find(a), self.find(b));
        if x == y {
            return false;
        }
        if self.parent[x] > self.parent[y] {
            std::mem::swap(&mut x, &mut y);
        }
        self.history.push((y as u32, self.parent[y]));
        self.parent[x] += self.parent[y];
        self.parent[y] = x as i32;
        true
    }

    pub fn rollback(&mut self, time: usize) {
        while self.history.len() > time {
            let (v, old) = self.history.pop().expect("history is non-empty");
            let v = v as usize;
            let root = self.parent[v] as usize;
            self.parent[root] -= old;
            self.parent[v] = old;
        }
    }

    /// Dense component labels numbered by first appearance.
    pub fn labels(&self) -> (Vec<usize>, usize) {
        let mut root_label = vec![usize::MAX; self.parent.len()];
        let mut labels = Vec::with_capacity(self.parent.len());
        let mut next = 0;
        for v in 0..self.parent.len() {
            let r = self.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            labels.push(root_label[r]);
        }
        (labels, next)
    }
}
