//! Breadth-first enumeration of a labeled Rauzy class.
//!
//! Vertices are numbered in discovery order starting from the root, with the
//! `t`-child of a vertex enqueued before its `b`-child, so ids depend only on
//! the move structure and never on letter spelling. Rows are kept in one flat
//! buffer (`2d` letters per vertex) and the hash index stores bare vertex ids.

use std::fmt;
use std::sync::Arc;

use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;
use std::hash::BuildHasher;

use crate::error::{Error, Result};
use crate::permutation::{self, Alphabet, LabeledPermutation, Letter, MoveKind, Renumbering};

pub type VertexId = u32;

/// Guard on the number of enumerated vertices.
pub const DEFAULT_MAX_VERTICES: usize = 5_000_000;

#[derive(Clone)]
pub struct RauzyDiagram {
    alphabet: Arc<Alphabet>,
    d: usize,
    rows: Vec<Letter>,
    index: HashTable<VertexId>,
    hasher: FxBuildHasher,
    t_succ: Vec<VertexId>,
    b_succ: Vec<VertexId>,
}

impl fmt::Debug for RauzyDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RauzyDiagram")
            .field("letters", &self.d)
            .field("vertices", &self.len())
            .finish()
    }
}

/// In/out degree counts per edge color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeAudit {
    pub vertices: usize,
    pub t_out: usize,
    pub b_out: usize,
    pub t_in_min: usize,
    pub t_in_max: usize,
    pub b_in_min: usize,
    pub b_in_max: usize,
}

impl RauzyDiagram {
    /// Closes `{root}` under both moves. Fails with
    /// [`Error::GuardExceeded`] once more than `max_vertices` vertices are found.
    pub fn enumerate(root: &LabeledPermutation, max_vertices: usize) -> Result<Self> {
        if !root.is_irreducible() {
            return Err(Error::Reducible);
        }
        let d = root.len();
        let mut diagram = RauzyDiagram {
            alphabet: Arc::clone(root.alphabet()),
            d,
            rows: Vec::new(),
            index: HashTable::new(),
            hasher: FxBuildHasher,
            t_succ: Vec::new(),
            b_succ: Vec::new(),
        };
        let mut scratch: Vec<Letter> = root.top().iter().chain(root.bottom()).copied().collect();
        if max_vertices == 0 {
            return Err(Error::GuardExceeded { limit: max_vertices });
        }
        diagram.insert(&scratch);

        let mut next = 0usize;
        while next < diagram.len() {
            for kind in MoveKind::BOTH {
                scratch.copy_from_slice(diagram.row(next as VertexId));
                let (top, bottom) = scratch.split_at_mut(d);
                permutation::apply_move(top, bottom, kind)?;
                let id = match diagram.lookup(&scratch) {
                    Some(id) => id,
                    None => {
                        if diagram.len() >= max_vertices {
                            return Err(Error::GuardExceeded { limit: max_vertices });
                        }
                        diagram.insert(&scratch)
                    }
                };
                match kind {
                    MoveKind::Top => diagram.t_succ.push(id),
                    MoveKind::Bottom => diagram.b_succ.push(id),
                }
            }
            next += 1;
        }
        Ok(diagram)
    }

    fn row(&self, id: VertexId) -> &[Letter] {
        let start = id as usize * 2 * self.d;
        &self.rows[start..start + 2 * self.d]
    }

    fn lookup(&self, key: &[Letter]) -> Option<VertexId> {
        let hash = self.hasher.hash_one(key);
        self.index.find(hash, |&id| self.row(id) == key).copied()
    }

    fn insert(&mut self, key: &[Letter]) -> VertexId {
        let id = self.len() as VertexId;
        self.rows.extend_from_slice(key);
        let (rows, d, hasher) = (&self.rows, self.d, &self.hasher);
        let hash = hasher.hash_one(key);
        self.index.insert_unique(hash, id, |&other| {
            let start = other as usize * 2 * d;
            hasher.hash_one(&rows[start..start + 2 * d])
        });
        id
    }

    pub fn len(&self) -> usize {
        self.rows.len() / (2 * self.d)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn letters(&self) -> usize {
        self.d
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn root(&self) -> VertexId {
        0
    }

    /// Top and bottom rows of a vertex.
    pub fn rows(&self, id: VertexId) -> (&[Letter], &[Letter]) {
        self.row(id).split_at(self.d)
    }

    pub fn vertex(&self, id: VertexId) -> LabeledPermutation {
        let (top, bottom) = self.rows(id);
        LabeledPermutation::from_rows_unchecked(Arc::clone(&self.alphabet), top.into(), bottom.into())
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = LabeledPermutation> + '_ {
        (0..self.len() as VertexId).map(|id| self.vertex(id))
    }

    pub fn t_succ(&self) -> &[VertexId] {
        &self.t_succ
    }

    pub fn b_succ(&self) -> &[VertexId] {
        &self.b_succ
    }

    pub fn succ(&self, id: VertexId, kind: MoveKind) -> VertexId {
        match kind {
            MoveKind::Top => self.t_succ[id as usize],
            MoveKind::Bottom => self.b_succ[id as usize],
        }
    }

    /// Vertex id of `p`, re-interning by token spelling when `p` uses a
    /// different alphabet.
    pub fn find(&self, p: &LabeledPermutation) -> Option<VertexId> {
        if p.len() != self.d {
            return None;
        }
        let same = Arc::ptr_eq(p.alphabet(), &self.alphabet) || **p.alphabet() == *self.alphabet;
        let owned;
        let p = if same {
            p
        } else {
            owned = p.reintern(&self.alphabet)?;
            &owned
        };
        let key: Vec<Letter> = p.top().iter().chain(p.bottom()).copied().collect();
        self.lookup(&key)
    }

    pub fn contains(&self, p: &LabeledPermutation) -> bool {
        self.find(p).is_some()
    }

    /// Checks that each vertex has one outgoing and exactly one incoming
    /// edge of each color.
    pub fn degree_audit(&self) -> Result<DegreeAudit> {
        let n = self.len();
        let count = |succ: &[VertexId]| -> Result<(usize, usize)> {
            if succ.len() != n {
                return Err(Error::Structure(format!(
                    "{} successors recorded for {} vertices",
                    succ.len(),
                    n
                )));
            }
            let mut indeg = vec![0usize; n];
            for &s in succ {
                indeg[s as usize] += 1;
            }
            let min = indeg.iter().copied().min().unwrap_or(0);
            let max = indeg.iter().copied().max().unwrap_or(0);
            Ok((min, max))
        };
        let (t_in_min, t_in_max) = count(&self.t_succ)?;
        let (b_in_min, b_in_max) = count(&self.b_succ)?;
        let audit = DegreeAudit {
            vertices: n,
            t_out: 1,
            b_out: 1,
            t_in_min,
            t_in_max,
            b_in_min,
            b_in_max,
        };
        if (t_in_min, t_in_max, b_in_min, b_in_max) != (1, 1, 1, 1) {
            return Err(Error::Structure(format!("in-degrees violate 1-in per color: {audit:?}")));
        }
        Ok(audit)
    }

    /// Full check that relabeling by `f` maps the diagram onto itself,
    /// preserving `t` and `b` edges at every vertex.
    pub fn is_automorphism(&self, f: &Renumbering) -> bool {
        if f.len() != self.d {
            return false;
        }
        let image = |id: VertexId| -> Option<VertexId> {
            let key: Vec<Letter> = self.row(id).iter().map(|&l| f.apply(l)).collect();
            self.lookup(&key)
        };
        let mut map = Vec::with_capacity(self.len());
        for id in 0..self.len() as VertexId {
            match image(id) {
                Some(v) => map.push(v),
                None => return false,
            }
        }
        (0..self.len()).all(|v| {
            map[self.t_succ[v] as usize] == self.t_succ[map[v] as usize]
                && map[self.b_succ[v] as usize] == self.b_succ[map[v] as usize]
        })
    }

    /// All color-preserving graph automorphisms, as vertex maps. Each one is
    /// determined by the image of the root, so this costs `O(V^2)`; meant for
    /// small diagrams.
    pub fn graph_automorphisms(&self) -> Vec<Vec<VertexId>> {
        let n = self.len();
        let mut out = Vec::new();
        'candidate: for target in 0..n as VertexId {
            let mut map: Vec<Option<VertexId>> = vec![None; n];
            let mut used = vec![false; n];
            map[0] = Some(target);
            used[target as usize] = true;
            let mut queue = vec![0 as VertexId];
            while let Some(v) = queue.pop() {
                let image = map[v as usize].expect("queued vertices are mapped");
                for kind in MoveKind::BOTH {
                    let (src, dst) = (self.succ(v, kind), self.succ(image, kind));
                    match map[src as usize] {
                        Some(existing) if existing != dst => continue 'candidate,
                        Some(_) => {}
                        None => {
                            if std::mem::replace(&mut used[dst as usize], true) {
                                continue 'candidate;
                            }
                            map[src as usize] = Some(dst);
                            queue.push(src);
                        }
                    }
                }
            }
            // connected from the root, so every vertex is mapped
            out.push(map.into_iter().map(|m| m.expect("diagram is connected")).collect());
        }
        out
    }

    /// Relabeling inducing the given vertex map, if there is one.
    pub fn inducing_renumbering(&self, map: &[VertexId]) -> Option<Renumbering> {
        let (top, bottom) = self.rows(0);
        let (img_top, img_bottom) = self.rows(map[0]);
        let mut images = vec![Letter(0); self.d];
        for (&a, &b) in top.iter().zip(img_top).chain(bottom.iter().zip(img_bottom)) {
            images[a.index()] = b;
        }
        let f = Renumbering::new(images).ok()?;
        (0..self.len() as VertexId)
            .all(|v| {
                let key: Vec<Letter> = self.row(v).iter().map(|&l| f.apply(l)).collect();
                self.row(map[v as usize]) == key.as_slice()
            })
            .then_some(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const YOCCOZ: &str = "-inf b2 a2 b1 a1 c1 0 c2 inf\ninf b1 a2 b2 a1 c2 0 c1 -inf";

    fn perm(text: &str) -> LabeledPermutation {
        LabeledPermutation::parse(text, None).unwrap()
    }

    fn class(text: &str) -> RauzyDiagram {
        RauzyDiagram::enumerate(&perm(text), DEFAULT_MAX_VERTICES).unwrap()
    }

    #[test]
    fn torus_class_is_a_single_vertex_with_two_loops() {
        let d = class("A B\nB A");
        assert_eq!(d.len(), 1);
        assert_eq!(d.t_succ(), &[0]);
        assert_eq!(d.b_succ(), &[0]);
        let audit = d.degree_audit().unwrap();
        assert_eq!((audit.t_in_min, audit.t_in_max, audit.b_in_min, audit.b_in_max), (1, 1, 1, 1));
    }

    #[test]
    fn three_letter_class_contains_both_children() {
        let root = perm("A B C\nC B A");
        let d = RauzyDiagram::enumerate(&root, 100).unwrap();
        let t = LabeledPermutation::parse("A B C\nC A B", Some(root.alphabet())).unwrap();
        let b = LabeledPermutation::parse("A C B\nC B A", Some(root.alphabet())).unwrap();
        assert_eq!(d.find(&t), Some(d.t_succ()[0]));
        assert_eq!(d.find(&b), Some(d.b_succ()[0]));
        // t-child discovered first
        assert_eq!(d.t_succ()[0], 1);
        assert_eq!(d.b_succ()[0], 2);
        d.degree_audit().unwrap();
    }

    #[test]
    fn rejects_reducible_root_and_honours_guard() {
        assert_eq!(
            RauzyDiagram::enumerate(&perm("A B\nA B"), 10).unwrap_err(),
            Error::Reducible
        );
        assert_eq!(
            RauzyDiagram::enumerate(&perm(YOCCOZ), 10).unwrap_err(),
            Error::GuardExceeded { limit: 10 }
        );
    }

    #[test]
    fn membership_across_alphabets() {
        let root = perm("A B C\nC B A");
        let d = RauzyDiagram::enumerate(&root, 100).unwrap();
        // same tokens, different interning order
        let q = perm("C A B\nA B C");
        assert_eq!(d.contains(&q), d.vertices().any(|v| v.to_string() == q.to_string()));
        assert!(!d.contains(&perm("A B X\nX B A")));
        assert!(!d.contains(&perm("A B\nB A")));
    }

    #[test]
    fn automorphism_full_check_on_small_classes() {
        let d = class("A B C D\nB C D A");
        let alphabet = d.alphabet().clone();
        let swap = Renumbering::from_cycles(&alphabet, &[&["C", "D"]]).unwrap();
        assert!(d.is_automorphism(&swap));
        assert!(d.is_automorphism(&Renumbering::identity(4)));
        let bad = Renumbering::from_cycles(&alphabet, &[&["A", "C"]]).unwrap();
        assert!(!d.is_automorphism(&bad));
    }

    #[test]
    fn graph_automorphisms_of_torus_class() {
        let d = class("A B\nB A");
        let autos = d.graph_automorphisms();
        assert_eq!(autos, vec![vec![0]]);
        assert!(d.inducing_renumbering(&autos[0]).unwrap().is_identity());
    }
}
