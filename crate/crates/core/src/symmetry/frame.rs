//! Semidirect coordinates on the centralizer of `T`.
//!
//! Regular orbits are grouped by length. Within a class of orbits of length
//! `p = k+1`, a relabeling commuting with `T` is a pair `(m, τ)`: `τ`
//! permutes the orbits and `m_j ∈ Z/p` is the rotation applied on arrival in
//! orbit `j`, i.e. `σ(base_j) = T^{m_{τ(j)}}(base_{τ(j)})`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::marking::MarkingData;
use crate::permutation::{Letter, Renumbering};

/// Regular orbits of one length, each listed as `base, T(base), T²(base), ...`
/// with `base` its smallest letter; orbits sorted by base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeClass {
    pub degree: u32,
    pub orbits: Vec<Vec<Letter>>,
}

impl DegreeClass {
    pub fn orbit_len(&self) -> usize {
        self.degree as usize + 1
    }

    pub fn multiplicity(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Location {
    class: usize,
    orbit: usize,
    step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitFrame {
    letters: usize,
    pub special: Vec<Letter>,
    /// Ordered by degree, largest first.
    pub classes: Vec<DegreeClass>,
    location: Vec<Option<Location>>,
}

impl OrbitFrame {
    pub fn new(marking: &MarkingData) -> Self {
        let letters = marking.rotation.len();
        let mut classes: Vec<DegreeClass> = marking
            .degree_classes()
            .into_iter()
            .map(|(degree, _)| DegreeClass { degree, orbits: Vec::new() })
            .collect();
        for orbit in marking.regular_orbits() {
            let degree = orbit.len() as u32 - 1;
            let class = classes.iter_mut().find(|c| c.degree == degree).expect("degree listed");
            class.orbits.push(orbit.clone());
        }
        let mut location = vec![None; letters];
        for (ci, class) in classes.iter().enumerate() {
            for (oi, orbit) in class.orbits.iter().enumerate() {
                for (step, l) in orbit.iter().enumerate() {
                    location[l.index()] = Some(Location { class: ci, orbit: oi, step });
                }
            }
        }
        OrbitFrame {
            letters,
            special: marking.orbits[marking.special_orbit].clone(),
            classes,
            location,
        }
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn has_odd_class(&self) -> bool {
        self.classes.iter().any(DegreeClass::is_odd)
    }

    pub fn to_coordinates(&self, sigma: &Renumbering) -> Result<SemidirectElement> {
        if sigma.len() != self.letters {
            return Err(Error::NotInCandidateGroup);
        }
        if self.special.iter().any(|&l| sigma.apply(l) != l) {
            return Err(Error::NotInCandidateGroup);
        }
        let mut parts = Vec::with_capacity(self.classes.len());
        for (ci, class) in self.classes.iter().enumerate() {
            let p = class.orbit_len();
            let n = class.multiplicity();
            let mut shifts = vec![0u32; n];
            let mut perm = vec![0usize; n];
            for (j, orbit) in class.orbits.iter().enumerate() {
                let loc = self.location[sigma.apply(orbit[0]).index()]
                    .filter(|loc| loc.class == ci)
                    .ok_or(Error::NotInCandidateGroup)?;
                perm[j] = loc.orbit;
                shifts[loc.orbit] = loc.step as u32;
                let target = &class.orbits[loc.orbit];
                let commutes =
                    orbit.iter().enumerate().all(|(t, &l)| sigma.apply(l) == target[(t + loc.step) % p]);
                if !commutes {
                    return Err(Error::NotInCandidateGroup);
                }
            }
            parts.push(ClassCoords { modulus: p as u32, shifts, perm });
        }
        Ok(SemidirectElement { parts })
    }

    pub fn from_coordinates(&self, coords: &SemidirectElement) -> Result<Renumbering> {
        if coords.parts.len() != self.classes.len() {
            return Err(Error::Group("coordinate shape does not match frame".into()));
        }
        let mut images: Vec<Letter> = (0..self.letters).map(|i| Letter(i as u8)).collect();
        for (class, part) in self.classes.iter().zip(&coords.parts) {
            let p = class.orbit_len();
            if part.modulus as usize != p
                || part.perm.len() != class.multiplicity()
                || part.shifts.iter().any(|&m| m as usize >= p)
            {
                return Err(Error::Group("coordinate shape does not match frame".into()));
            }
            for (j, orbit) in class.orbits.iter().enumerate() {
                let dest = part.perm[j];
                let target = class.orbits.get(dest).ok_or(Error::NotBijective)?;
                let m = part.shifts[dest] as usize;
                for (t, &l) in orbit.iter().enumerate() {
                    images[l.index()] = target[(t + m) % p];
                }
            }
        }
        Renumbering::new(images)
    }

    pub fn identity(&self) -> SemidirectElement {
        SemidirectElement {
            parts: self
                .classes
                .iter()
                .map(|c| ClassCoords {
                    modulus: c.orbit_len() as u32,
                    shifts: vec![0; c.multiplicity()],
                    perm: (0..c.multiplicity()).collect(),
                })
                .collect(),
        }
    }
}

/// `(m, τ)` for one class of orbits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassCoords {
    pub modulus: u32,
    /// Rotation exponents, indexed by destination orbit.
    pub shifts: Vec<u32>,
    /// `perm[j] = τ(j)`, 0-based.
    pub perm: Vec<usize>,
}

impl ClassCoords {
    pub fn is_identity(&self) -> bool {
        self.shifts.iter().all(|&m| m == 0) && self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn perm_is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn shift_sum(&self) -> u64 {
        self.shifts.iter().map(|&m| m as u64).sum()
    }

    /// `+1` for even `τ`, `-1` for odd.
    pub fn perm_sign(&self) -> Sign {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        Sign::from_parity(transpositions)
    }

    /// Nontrivial cycles of `τ`, 0-based.
    pub fn perm_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.perm[j];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    fn compose(&self, other: &ClassCoords) -> ClassCoords {
        let n = self.perm.len();
        let mut inv = vec![0; n];
        for (j, &t) in self.perm.iter().enumerate() {
            inv[t] = j;
        }
        ClassCoords {
            modulus: self.modulus,
            shifts: (0..n).map(|k| (self.shifts[k] + other.shifts[inv[k]]) % self.modulus).collect(),
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        }
    }

    fn inverse(&self) -> ClassCoords {
        let n = self.perm.len();
        let mut inv = vec![0; n];
        for (j, &t) in self.perm.iter().enumerate() {
            inv[t] = j;
        }
        // (m, τ)^{-1} = (-τ^{-1}·m, τ^{-1}); (τ^{-1}·m)_k = m_{τ(k)}
        ClassCoords {
            modulus: self.modulus,
            shifts: (0..n)
                .map(|k| (self.modulus - self.shifts[self.perm[k]] % self.modulus) % self.modulus)
                .collect(),
            perm: inv,
        }
    }
}

impl fmt::Display for ClassCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shifts: Vec<String> = self.shifts.iter().map(u32::to_string).collect();
        let cycles = self.perm_cycles();
        let tau = if cycles.is_empty() {
            "id".to_owned()
        } else {
            cycles
                .iter()
                .map(|c| {
                    let body: Vec<String> = c.iter().map(|j| (j + 1).to_string()).collect();
                    format!("({})", body.join(" "))
                })
                .collect()
        };
        write!(f, "(({}), {})", shifts.join(","), tau)
    }
}

/// Coordinates of one relabeling across all degree classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SemidirectElement {
    pub parts: Vec<ClassCoords>,
}

impl SemidirectElement {
    /// Split-extension product: `(m,τ)·(m',τ') = (m + τ·m', ττ')`.
    pub fn compose(&self, other: &SemidirectElement) -> SemidirectElement {
        assert_eq!(self.parts.len(), other.parts.len(), "coordinates from different frames");
        SemidirectElement {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.compose(b)).collect(),
        }
    }

    pub fn inverse(&self) -> SemidirectElement {
        SemidirectElement { parts: self.parts.iter().map(ClassCoords::inverse).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(ClassCoords::is_identity)
    }
}

impl fmt::Display for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> =
            self.parts.iter().map(|p| format!("k={}: {}", p.modulus - 1, p)).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(n: u64) -> Sign {
        if n.is_multiple_of(2) { Sign::Plus } else { Sign::Minus }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs { Sign::Plus } else { Sign::Minus }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// The sign homomorphism: a product over degree classes, trivial on even
/// degrees and `(-1)^{Σ m_j} · sgn(τ)` on odd ones. With `p = k+1 = 2q`,
/// `(∏ ζ_j)^q = exp(πi Σ m_j)`, so only the parity of the exponent sum matters.
pub fn phi(coords: &SemidirectElement) -> Sign {
    coords
        .parts
        .iter()
        .filter(|part| part.modulus % 2 == 0)
        .map(|part| Sign::from_parity(part.shift_sum()) * part.perm_sign())
        .fold(Sign::Plus, |a, b| a * b)
}
