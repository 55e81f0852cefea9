use std::collections::HashMap;

use crate::diagram::RauzyDiagram;
use crate::error::{Error, Result};
use crate::marking::MarkingData;
use crate::permutation::{Letter, Renumbering};

use super::frame::{phi, OrbitFrame, SemidirectElement, Sign};

/// Largest candidate group we are willing to list element by element.
pub const MAX_GROUP_ORDER: u128 = 10_000_000;

/// A group of relabelings inside the centralizer of `T`, with coordinates.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    frame: OrbitFrame,
    elements: Vec<Renumbering>,
    coords: Vec<SemidirectElement>,
    index: HashMap<Renumbering, usize>,
}

impl SymmetryGroup {
    fn from_elements(frame: OrbitFrame, mut elements: Vec<Renumbering>) -> Result<Self> {
        elements.sort_by_cached_key(|e| frame.to_coordinates(e).ok());
        let coords = elements
            .iter()
            .map(|e| frame.to_coordinates(e))
            .collect::<Result<Vec<_>>>()?;
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(SymmetryGroup { frame, elements, coords, index })
    }

    pub fn frame(&self) -> &OrbitFrame {
        &self.frame
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Renumbering] {
        &self.elements
    }

    pub fn coordinates(&self) -> &[SemidirectElement] {
        &self.coords
    }

    pub fn contains(&self, sigma: &Renumbering) -> bool {
        self.index.contains_key(sigma)
    }

    pub fn position(&self, sigma: &Renumbering) -> Option<usize> {
        self.index.get(sigma).copied()
    }

    /// Exhaustive closure, identity and inverse check.
    pub fn check_group_axioms(&self) -> Result<()> {
        let id = Renumbering::identity(self.frame.letters());
        if !self.contains(&id) {
            return Err(Error::Group("identity missing".into()));
        }
        for a in &self.elements {
            if !self.contains(&a.inverse()) {
                return Err(Error::Group("not closed under inverses".into()));
            }
            for b in &self.elements {
                if !self.contains(&a.compose(b)) {
                    return Err(Error::Group("not closed under composition".into()));
                }
            }
        }
        Ok(())
    }

    /// Elements with `phi = +1`.
    pub fn phi_kernel(&self) -> Vec<&Renumbering> {
        self.elements
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| phi(c) == Sign::Plus)
            .map(|(e, _)| e)
            .collect()
    }
}

/// `∏ n_i! (k_i+1)^{n_i}` over the non-special degree classes.
pub fn candidate_order_formula(marking: &MarkingData) -> Option<u128> {
    marking.degree_classes().iter().try_fold(1u128, |acc, &(k, n)| {
        let fact = (1..=n as u128).try_fold(1u128, |f, i| f.checked_mul(i))?;
        let pow = (k as u128 + 1).checked_pow(n as u32)?;
        acc.checked_mul(fact)?.checked_mul(pow)
    })
}

/// All relabelings commuting with `T` and fixing the special orbit
/// pointwise, listed by backtracking over orbit images.
pub fn build_candidate_group(marking: &MarkingData) -> Result<SymmetryGroup> {
    let formula = candidate_order_formula(marking).ok_or(Error::GroupTooLarge(u128::MAX))?;
    if formula > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge(formula));
    }
    let t = &marking.rotation;
    let d = t.len();
    let regular: Vec<&Vec<Letter>> = marking.regular_orbits().collect();

    let mut images: Vec<Option<Letter>> = vec![None; d];
    for &l in &marking.orbits[marking.special_orbit] {
        images[l.index()] = Some(l);
    }
    let mut used = vec![false; regular.len()];
    let mut out = Vec::with_capacity(formula as usize);
    extend(0, &regular, t, &mut images, &mut used, &mut out);

    for sigma in &out {
        let commutes = (0..d).all(|i| {
            let l = Letter(i as u8);
            sigma.apply(t.apply(l)) == t.apply(sigma.apply(l))
        });
        if !commutes {
            return Err(Error::Group("candidate does not commute with T".into()));
        }
    }
    if out.len() as u128 != formula {
        return Err(Error::Group(format!(
            "candidate group has {} elements, formula gives {formula}",
            out.len()
        )));
    }
    SymmetryGroup::from_elements(OrbitFrame::new(marking), out)
}

fn extend(
    next: usize,
    orbits: &[&Vec<Letter>],
    t: &Renumbering,
    images: &mut [Option<Letter>],
    used: &mut [bool],
    out: &mut Vec<Renumbering>,
) {
    if next == orbits.len() {
        out.push(
            Renumbering::new(images.iter().map(|l| l.expect("all letters assigned")).collect())
                .expect("orbit-wise assignment is bijective"),
        );
        return;
    }
    let source = orbits[next];
    for (target_idx, target) in orbits.iter().enumerate() {
        if used[target_idx] || target.len() != source.len() {
            continue;
        }
        used[target_idx] = true;
        for &start in target.iter() {
            // σ(T^s base) = T^s(start)
            let mut img = start;
            for &l in source.iter() {
                images[l.index()] = Some(img);
                img = t.apply(img);
            }
            extend(next + 1, orbits, t, images, used, out);
        }
        used[target_idx] = false;
    }
    for &l in source.iter() {
        images[l.index()] = None;
    }
}

/// Members `σ` of the candidate group with `σ(root)` in the class.
/// Relabeling commutes with both moves, so this is the full automorphism
/// group of the diagram.
pub fn automorphism_group(diagram: &RauzyDiagram, candidates: &SymmetryGroup) -> Result<SymmetryGroup> {
    let root = diagram.vertex(diagram.root());
    let mut members = Vec::new();
    for sigma in candidates.elements() {
        if diagram.contains(&root.renumber(sigma)?) {
            members.push(sigma.clone());
        }
    }
    let group = SymmetryGroup::from_elements(candidates.frame().clone(), members)?;
    group.check_group_axioms()?;
    Ok(group)
}

/// An element `((m_1, m_2, 0, ...), (j_1 j_2))` of one odd class whose
/// square has order `k+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaWitness {
    pub class: usize,
    pub element: Renumbering,
    pub coords: SemidirectElement,
    pub square: SemidirectElement,
    pub square_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(LemmaWitness),
    Absent,
    NotApplicable(String),
}

pub fn find_lemma_witness(aut: &SymmetryGroup, class: usize) -> Result<WitnessSearch> {
    let Some(dc) = aut.frame().classes.get(class) else {
        return Ok(WitnessSearch::NotApplicable("no such degree class".into()));
    };
    if !dc.is_odd() {
        return Ok(WitnessSearch::NotApplicable(format!("degree {} is even", dc.degree)));
    }
    if dc.multiplicity() < 2 {
        return Ok(WitnessSearch::NotApplicable(format!(
            "only {} orbit of degree {}",
            dc.multiplicity(),
            dc.degree
        )));
    }
    let p = dc.orbit_len() as u64;
    let mut best: Option<(Vec<usize>, usize)> = None;
    for (idx, (sigma, coords)) in aut.elements().iter().zip(aut.coordinates()).enumerate() {
        let others_trivial =
            coords.parts.iter().enumerate().all(|(ci, part)| ci == class || part.is_identity());
        if !others_trivial {
            continue;
        }
        let part = &coords.parts[class];
        let cycles = part.perm_cycles();
        if cycles.len() != 1 || cycles[0].len() != 2 {
            continue;
        }
        let (j1, j2) = (cycles[0][0], cycles[0][1]);
        if part.shifts.iter().enumerate().any(|(j, &m)| j != j1 && j != j2 && m != 0) {
            continue;
        }
        let square = sigma.compose(sigma);
        if square.order() != p {
            continue;
        }
        let key = vec![j1, j2, part.shifts[j1] as usize, part.shifts[j2] as usize];
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, idx));
        }
    }
    let Some((_, idx)) = best else {
        return Ok(WitnessSearch::Absent);
    };
    let element = aut.elements()[idx].clone();
    let coords = aut.coordinates()[idx].clone();
    let square = coords.compose(&coords);

    // g² = ((s, s, 0, ...), id) with s = m_1 + m_2
    let part = &coords.parts[class];
    let (j1, j2) = {
        let c = &part.perm_cycles()[0];
        (c[0], c[1])
    };
    let s = (part.shifts[j1] + part.shifts[j2]) % part.modulus;
    let sq = &square.parts[class];
    let expected_shift =
        |j: usize| if j == j1 || j == j2 { s } else { 0 };
    let shape_ok = sq.perm_is_identity()
        && sq.shifts.iter().enumerate().all(|(j, &m)| m == expected_shift(j));
    if !shape_ok || aut.frame().to_coordinates(&element.compose(&element))? != square {
        return Err(Error::Group(format!("square of witness has unexpected coordinates {square}")));
    }
    Ok(WitnessSearch::Found(LemmaWitness {
        class,
        square_order: element.compose(&element).order(),
        element,
        coords,
        square,
    }))
}
