//! Singularity data of a labeled permutation, read off the boundary of its
//! suspension polygon.
//!
//! The polygon has `2d` corners: the left end `L`, the right end `R`, the
//! interior top corners `t_1..t_{d-1}` and the interior bottom corners
//! `b_1..b_{d-1}`. Top edge `T_j` carries letter `top[j-1]` and is glued by
//! translation to the bottom edge with the same letter. Going around a
//! glued vertex means crossing edges: from a bottom corner `b_j` (or `L`)
//! across the left end of the edge of `bottom[j]` into the top corner
//! `t_{pos_top(bottom[j])}`, and from a top corner `t_m` (or `R`) across the
//! right end of the edge of `top[m-1]` into `b_{pos_bottom(top[m-1]) + 1}`.
//! The cycles of this walk are the cone points.
//!
//! Each left-end crossing carries the separatrix of its letter; the rotation
//! map `T` sends a letter to the next mark along the walk. The two letters
//! at `L` label the same separatrix and come out consecutive, with
//! `T(top[0]) = bottom[0]`.

use std::fmt;
use std::sync::Arc;

use crate::diagram::RauzyDiagram;
use crate::error::{Error, Result};
use crate::permutation::{Alphabet, LabeledPermutation, Letter, Renumbering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corner {
    Left,
    Right,
    /// `t_m`, `1 <= m <= d-1`
    Top(usize),
    /// `b_j`, `1 <= j <= d-1`
    Bottom(usize),
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Corner::Left => f.write_str("L"),
            Corner::Right => f.write_str("R"),
            Corner::Top(m) => write!(f, "t{m}"),
            Corner::Bottom(j) => write!(f, "b{j}"),
        }
    }
}

/// Boundary corners of the suspension polygon and the walk around glued
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerMap {
    d: usize,
    /// `pairing[j]` = 0-based bottom position of the edge glued to top edge `j`.
    pairing: Vec<usize>,
    successor: Vec<usize>,
    /// Letter carried by the crossing `c -> successor[c]`.
    marks: Vec<Option<Letter>>,
}

impl CornerMap {
    pub fn build(p: &LabeledPermutation) -> Result<Self> {
        if !p.is_irreducible() {
            return Err(Error::Reducible);
        }
        let d = p.len();
        let (top_pos, bottom_pos) = p.positions();
        let (top, bottom) = (p.top(), p.bottom());
        let top_id = |m: usize| match m {
            0 => 0,
            m if m == d => 1,
            m => 1 + m,
        };
        let bottom_id = |j: usize| match j {
            0 => 0,
            j if j == d => 1,
            j => d + j,
        };
        let mut successor = vec![usize::MAX; 2 * d];
        let mut marks = vec![None; 2 * d];
        for j in 0..d {
            // bottom corner b_j (b_0 = L), left end of the edge bottom[j]
            let letter = bottom[j];
            successor[bottom_id(j)] = top_id(top_pos[letter.index()]);
            marks[bottom_id(j)] = Some(letter);
        }
        for m in 1..=d {
            // top corner t_m (t_d = R), right end of the edge top[m-1]
            successor[top_id(m)] = bottom_id(bottom_pos[top[m - 1].index()] + 1);
        }
        let pairing = top.iter().map(|l| bottom_pos[l.index()]).collect();
        let map = CornerMap { d, pairing, successor, marks };
        map.check()?;
        Ok(map)
    }

    fn check(&self) -> Result<()> {
        let mut hit = vec![false; 2 * self.d];
        for &s in &self.successor {
            if s >= hit.len() || std::mem::replace(&mut hit[s], true) {
                return Err(Error::Marking("corner successor is not a permutation".into()));
            }
        }
        Ok(())
    }

    pub fn corner(&self, id: usize) -> Corner {
        match id {
            0 => Corner::Left,
            1 => Corner::Right,
            id if id <= self.d => Corner::Top(id - 1),
            id => Corner::Bottom(id - self.d),
        }
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn successor(&self, c: Corner) -> Corner {
        self.corner(self.successor[self.id(c)])
    }

    fn id(&self, c: Corner) -> usize {
        match c {
            Corner::Left => 0,
            Corner::Right => 1,
            Corner::Top(m) => 1 + m,
            Corner::Bottom(j) => self.d + j,
        }
    }

    /// Cycles of the walk as corner ids, each starting at its smallest id
    /// (so the cycle through `L` starts at `L`), ordered by that id.
    fn cycle_ids(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; 2 * self.d];
        let mut out = Vec::new();
        for start in 0..2 * self.d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                cycle.push(c);
                c = self.successor[c];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycles(&self) -> Vec<Vec<Corner>> {
        self.cycle_ids()
            .into_iter()
            .map(|c| c.into_iter().map(|id| self.corner(id)).collect())
            .collect()
    }
}

/// Singularities, genus and the separatrix rotation of one permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkingData {
    alphabet: Arc<Alphabet>,
    pub cycles: Vec<Vec<Corner>>,
    /// Degree of the cone point of each cycle.
    pub degrees: Vec<u32>,
    /// Index into `cycles` of the cycle through `L`.
    pub special_cycle: usize,
    pub genus: u32,
    /// `L` and `R` are corners of the same cone point.
    pub left_right_joined: bool,
    pub rotation: Renumbering,
    /// Orbits of `rotation`, each listed along `T` from its smallest
    /// letter, ordered by that letter.
    pub orbits: Vec<Vec<Letter>>,
    /// Index into `orbits` of the orbit of `minus_inf`.
    pub special_orbit: usize,
    pub minus_inf: Letter,
    pub plus_inf: Letter,
}

impl MarkingData {
    pub fn new(p: &LabeledPermutation) -> Result<Self> {
        let map = CornerMap::build(p)?;
        let d = p.len();
        let ids = map.cycle_ids();

        let mut degrees = Vec::with_capacity(ids.len());
        for cycle in &ids {
            let top_fat = cycle.iter().filter(|&&c| (2..=d).contains(&c)).count();
            let bottom_fat = cycle.iter().filter(|&&c| c > d).count();
            if top_fat != bottom_fat {
                return Err(Error::Marking(format!(
                    "cycle with {top_fat} top and {bottom_fat} bottom corners"
                )));
            }
            if top_fat == 0 {
                return Err(Error::Marking("cycle without interior corners".into()));
            }
            degrees.push(top_fat as u32 - 1);
        }
        let angle_sum: usize = degrees.iter().map(|&k| k as usize + 1).sum();
        if angle_sum != d - 1 {
            return Err(Error::Marking(format!("sum of (k+1) is {angle_sum}, expected {}", d - 1)));
        }
        // vertices - edges + faces = #cycles - d + 1 = 2 - 2g
        let twice_genus = (d + 1)
            .checked_sub(ids.len())
            .filter(|x| x % 2 == 0 && *x >= 2)
            .ok_or_else(|| Error::Marking(format!("{} cycles for {d} letters", ids.len())))?;
        let genus = (twice_genus / 2) as u32;
        let degree_sum: u32 = degrees.iter().sum();
        if degree_sum + 2 != 2 * genus {
            return Err(Error::Marking("degree sum differs from 2g-2".into()));
        }

        let special_cycle = ids.iter().position(|c| c.contains(&0)).expect("L lies on a cycle");
        let left_right_joined = ids[special_cycle].contains(&1);

        // T: next mark along the walk
        let mut images = vec![None; d];
        for cycle in &ids {
            let marks: Vec<Letter> = cycle.iter().filter_map(|&c| map.marks[c]).collect();
            for (i, &l) in marks.iter().enumerate() {
                if images[l.index()].replace(marks[(i + 1) % marks.len()]).is_some() {
                    return Err(Error::Marking("letter marked twice".into()));
                }
            }
        }
        let images = images
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Marking("unmarked letter".into()))?;
        let rotation = Renumbering::new(images).map_err(|_| Error::Marking("T not bijective".into()))?;

        let minus_inf = p.top()[0];
        let plus_inf = p.bottom()[0];
        if rotation.apply(minus_inf) != plus_inf {
            return Err(Error::Marking("T(top-left) differs from bottom-left".into()));
        }

        let orbits = orbits_of(&rotation);
        let special_orbit =
            orbits.iter().position(|o| o.contains(&minus_inf)).expect("orbits cover letters");

        // orbit lengths against degrees: special k+2, regular k_i+1
        let mut from_orbits: Vec<usize> = orbits.iter().map(Vec::len).collect();
        let mut from_degrees: Vec<usize> = degrees
            .iter()
            .enumerate()
            .map(|(i, &k)| k as usize + 1 + usize::from(i == special_cycle))
            .collect();
        from_orbits.sort_unstable();
        from_degrees.sort_unstable();
        if from_orbits != from_degrees {
            return Err(Error::Marking(format!(
                "orbit lengths {from_orbits:?} do not match degrees (expected {from_degrees:?})"
            )));
        }
        if orbits[special_orbit].len() != degrees[special_cycle] as usize + 2 {
            return Err(Error::Marking("special orbit length differs from k+2".into()));
        }

        Ok(MarkingData {
            alphabet: Arc::clone(p.alphabet()),
            cycles: map.cycles(),
            degrees,
            special_cycle,
            genus,
            left_right_joined,
            rotation,
            orbits,
            special_orbit,
            minus_inf,
            plus_inf,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn special_degree(&self) -> u32 {
        self.degrees[self.special_cycle]
    }

    /// All degrees, sorted ascending.
    pub fn degree_multiset(&self) -> Vec<u32> {
        let mut v = self.degrees.clone();
        v.sort_unstable();
        v
    }

    /// Non-special degrees with multiplicities, largest degree first.
    pub fn degree_classes(&self) -> Vec<(u32, usize)> {
        let mut regular: Vec<u32> = self
            .degrees
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.special_cycle)
            .map(|(_, &k)| k)
            .collect();
        regular.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<(u32, usize)> = Vec::new();
        for k in regular {
            match out.last_mut() {
                Some((last, n)) if *last == k => *n += 1,
                _ => out.push((k, 1)),
            }
        }
        out
    }

    /// `H(k | k_1^n_1, ...)` with the special degree first.
    pub fn stratum_signature(&self) -> String {
        let classes = self.degree_classes();
        if classes.is_empty() {
            return format!("H({})", self.special_degree());
        }
        let rest: Vec<String> = classes
            .iter()
            .map(|&(k, n)| if n == 1 { k.to_string() } else { format!("{k}^{n}") })
            .collect();
        format!("H({} | {})", self.special_degree(), rest.join(", "))
    }

    pub fn regular_orbits(&self) -> impl Iterator<Item = &Vec<Letter>> {
        self.orbits.iter().enumerate().filter(move |(i, _)| *i != self.special_orbit).map(|(_, o)| o)
    }

    pub fn format_orbit(&self, orbit: &[Letter]) -> String {
        let body: Vec<&str> = orbit.iter().map(|&l| self.alphabet.token(l)).collect();
        format!("{{{}}}", body.join(", "))
    }
}

fn orbits_of(rotation: &Renumbering) -> Vec<Vec<Letter>> {
    let d = rotation.len();
    let mut seen = vec![false; d];
    let mut out = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut l = Letter(start as u8);
        while !seen[l.index()] {
            seen[l.index()] = true;
            orbit.push(l);
            l = rotation.apply(l);
        }
        out.push(orbit);
    }
    out
}

/// Outcome of recomputing the marking at every vertex of a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInvariance {
    pub vertices: usize,
    /// Vertices whose `L` and `R` corners lie on the same cone point.
    pub left_right_joined: usize,
    pub root: MarkingData,
}

/// Checks that `T`, the degree multiset, the special degree and the two
/// left letters agree at every vertex of the class.
pub fn assert_class_invariance(diagram: &RauzyDiagram) -> Result<ClassInvariance> {
    let root = MarkingData::new(&diagram.vertex(diagram.root()))?;
    let root_degrees = root.degree_multiset();
    let mut joined = 0;
    for id in 0..diagram.len() as u32 {
        let m = MarkingData::new(&diagram.vertex(id))?;
        let mismatch = if m.rotation != root.rotation {
            Some("rotation map")
        } else if m.degree_multiset() != root_degrees {
            Some("degree multiset")
        } else if m.special_degree() != root.special_degree() {
            Some("special degree")
        } else if (m.minus_inf, m.plus_inf) != (root.minus_inf, root.plus_inf) {
            Some("left letters")
        } else {
            None
        };
        if let Some(what) = mismatch {
            return Err(Error::Marking(format!("{what} differs at vertex {id}")));
        }
        joined += usize::from(m.left_right_joined);
    }
    Ok(ClassInvariance { vertices: diagram.len(), left_right_joined: joined, root })
}

/// The class contains a table with `top[j] == bottom[d-1-j]` for all `j`.
pub fn is_hyperelliptic_class(diagram: &RauzyDiagram) -> bool {
    (0..diagram.len() as u32).any(|id| {
        let (top, bottom) = diagram.rows(id);
        top.iter().zip(bottom.iter().rev()).all(|(a, b)| a == b)
    })
}
