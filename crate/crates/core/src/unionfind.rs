/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }

    /// Groups `members` by root. Classes come out ordered by their smallest
    /// member, members ascending.
    pub(crate) fn classes(&mut self, members: impl IntoIterator<Item = usize>) -> Vec<Vec<usize>> {
        let mut slot = std::collections::HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        for m in members {
            let r = self.find(m);
            let i = *slot.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[i].push(m);
        }
        out
    }
}
