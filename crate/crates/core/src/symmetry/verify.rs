use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::RauzyDiagram;
use crate::error::Result;
use crate::marking::{assert_class_invariance, is_hyperelliptic_class};
use crate::permutation::Renumbering;

use super::frame::{phi, SemidirectElement};
use super::group::{
    automorphism_group, build_candidate_group, candidate_order_formula, find_lemma_witness,
    SymmetryGroup, WitnessSearch,
};

/// Exhaustive pairwise checks run only below this many pairs.
const PAIRWISE_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Epsilon {
    One,
    Half,
}

impl Epsilon {
    pub fn apply(self, n: u128) -> u128 {
        match self {
            Epsilon::One => n,
            Epsilon::Half => n / 2,
        }
    }
}

impl Serialize for Epsilon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Epsilon::One => s.serialize_u8(1),
            Epsilon::Half => s.serialize_f64(0.5),
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::One => "1",
            Epsilon::Half => "1/2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_owned(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.to_owned(), status: CheckStatus::Skipped, detail: detail.into() }
    }

    /// Downgrades a pass/fail to informational.
    fn out_of_scope(mut self, hyperelliptic: bool) -> Self {
        if hyperelliptic {
            let outcome = match self.status {
                CheckStatus::Pass => "holds",
                CheckStatus::Fail => "does not hold",
                CheckStatus::Skipped => "not evaluated",
            };
            self.detail = format!("hyperelliptic, out of theorem scope ({outcome}): {}", self.detail);
            self.status = CheckStatus::Skipped;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub degree: u32,
    pub class: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<SemidirectElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square: Option<SemidirectElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_order: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub stratum: String,
    pub genus: u32,
    pub vertices: usize,
    pub hyperelliptic: bool,
    pub g_prime_order: u128,
    pub g_prime_formula: u128,
    pub aut_order: u128,
    pub epsilon: Epsilon,
    pub formula_order: u128,
    pub kernel_equals_aut: bool,
    pub witnesses: Vec<WitnessReport>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip)]
    pub candidates: SymmetryGroup,
    #[serde(skip)]
    pub automorphisms: SymmetryGroup,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stratum: {}, genus {}", self.stratum, self.genus)?;
        writeln!(f, "vertices: {}", self.vertices)?;
        if self.hyperelliptic {
            writeln!(f, "hyperelliptic: theorem out of scope")?;
        }
        writeln!(f, "|G'| = {} (formula {})", self.g_prime_order, self.g_prime_formula)?;
        writeln!(
            f,
            "|Aut(D)| = {} (formula {} x {} = {})",
            self.aut_order, self.epsilon, self.g_prime_formula, self.formula_order
        )?;
        writeln!(f, "Aut(D) = ker(phi): {}", self.kernel_equals_aut)?;
        for w in &self.witnesses {
            match (&w.element, &w.coordinates) {
                (Some(e), Some(c)) => writeln!(
                    f,
                    "witness k={}: {} = {}, square of order {}",
                    w.degree,
                    e,
                    c,
                    w.square_order.unwrap_or(0)
                )?,
                _ => writeln!(f, "witness k={}: {}", w.degree, w.status)?,
            }
        }
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        write!(f, "result: {}", if self.passed { "pass" } else { "fail" })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Re-check every candidate against the whole diagram instead of the
    /// image of the root only.
    pub full_graph_check: bool,
}

pub fn verify_theorem(diagram: &RauzyDiagram) -> Result<VerificationReport> {
    verify_theorem_with(diagram, VerifyOptions::default())
}

pub fn verify_theorem_with(diagram: &RauzyDiagram, options: VerifyOptions) -> Result<VerificationReport> {
    let mut checks = Vec::new();

    let audit = diagram.degree_audit()?;
    checks.push(Check::new("degree_audit", true, format!("{} vertices, 1-in/1-out per color", audit.vertices)));

    let invariance = assert_class_invariance(diagram)?;
    checks.push(Check::new(
        "class_invariance",
        true,
        format!(
            "T, degrees and left letters agree at {} vertices (L and R on one cone point at {})",
            invariance.vertices, invariance.left_right_joined
        ),
    ));
    let marking = invariance.root;
    let hyperelliptic = is_hyperelliptic_class(diagram);

    let special_odd = marking.special_degree() % 2 == 1;
    let candidates = build_candidate_group(&marking)?;
    let frame = candidates.frame().clone();
    let has_odd = frame.has_odd_class();
    checks.push(Check::new(
        "odd_degree_pairing",
        !special_odd || has_odd,
        format!("special degree {}, odd regular class present: {has_odd}", marking.special_degree()),
    ));

    let g_prime_formula = candidate_order_formula(&marking).expect("checked by build_candidate_group");
    let g_prime_order = candidates.order() as u128;
    checks.push(Check::new(
        "candidate_order",
        g_prime_order == g_prime_formula,
        format!("|G'| = {g_prime_order}, product formula {g_prime_formula}"),
    ));

    if candidates.order().pow(2) <= PAIRWISE_LIMIT {
        checks.push(coordinate_check(&candidates));
        checks.push(phi_homomorphism_check(&candidates));
    } else {
        checks.push(Check::skipped("coordinates", "candidate group too large for pairwise check"));
        checks.push(Check::skipped("phi_homomorphism", "candidate group too large for pairwise check"));
    }

    let automorphisms = automorphism_group(diagram, &candidates)?;
    checks.push(Check::new("aut_group_axioms", true, "closure, identity and inverses hold"));
    if options.full_graph_check {
        let agree = candidates
            .elements()
            .iter()
            .all(|s| diagram.is_automorphism(s) == automorphisms.contains(s));
        checks.push(Check::new(
            "full_graph_check",
            agree,
            "root-image membership agrees with edge-by-edge verification",
        ));
    }

    let epsilon = if has_odd { Epsilon::Half } else { Epsilon::One };
    let formula_order = epsilon.apply(g_prime_formula);
    let aut_order = automorphisms.order() as u128;
    checks.push(
        Check::new(
            "aut_order",
            aut_order == formula_order,
            format!("|Aut(D)| = {aut_order}, formula {epsilon} x {g_prime_formula} = {formula_order}"),
        )
        .out_of_scope(hyperelliptic),
    );

    let kernel: HashSet<&Renumbering> = candidates.phi_kernel().into_iter().collect();
    let aut_set: HashSet<&Renumbering> = automorphisms.elements().iter().collect();
    let kernel_equals_aut = kernel == aut_set;
    checks.push(
        Check::new(
            "kernel",
            kernel_equals_aut,
            format!("|ker phi| = {}, |Aut(D)| = {aut_order}", kernel.len()),
        )
        .out_of_scope(hyperelliptic),
    );
    if has_odd {
        let index_two = aut_order * 2 == g_prime_order;
        checks.push(
            Check::new("index", index_two, format!("[G' : Aut(D)] = {g_prime_order}/{aut_order}"))
                .out_of_scope(hyperelliptic),
        );
    }

    let mut witnesses = Vec::new();
    for (ci, class) in frame.classes.iter().enumerate() {
        if !class.is_odd() {
            continue;
        }
        let search = find_lemma_witness(&automorphisms, ci)?;
        let name = format!("witness_k{}", class.degree);
        let alphabet = diagram.alphabet();
        let report = match &search {
            WitnessSearch::Found(w) => {
                checks.push(Check::new(
                    &name,
                    w.square_order == class.orbit_len() as u64,
                    format!("g = {}, g^2 = {} of order {}", w.coords, w.square, w.square_order),
                ));
                WitnessReport {
                    degree: class.degree,
                    class: ci,
                    status: "found".into(),
                    element: Some(w.element.cycle_notation(alphabet)),
                    coordinates: Some(w.coords.clone()),
                    square: Some(w.square.clone()),
                    square_order: Some(w.square_order),
                }
            }
            WitnessSearch::Absent => {
                checks.push(
                    Check::new(&name, false, "no transposition element with square of order k+1")
                        .out_of_scope(hyperelliptic),
                );
                WitnessReport {
                    degree: class.degree,
                    class: ci,
                    status: "absent".into(),
                    element: None,
                    coordinates: None,
                    square: None,
                    square_order: None,
                }
            }
            WitnessSearch::NotApplicable(why) => {
                checks.push(Check::skipped(&name, why.clone()));
                WitnessReport {
                    degree: class.degree,
                    class: ci,
                    status: format!("not applicable: {why}"),
                    element: None,
                    coordinates: None,
                    square: None,
                    square_order: None,
                }
            }
        };
        witnesses.push(report);
    }

    let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    Ok(VerificationReport {
        stratum: marking.stratum_signature(),
        genus: marking.genus,
        vertices: diagram.len(),
        hyperelliptic,
        g_prime_order,
        g_prime_formula,
        aut_order,
        epsilon,
        formula_order,
        kernel_equals_aut,
        witnesses,
        checks,
        passed,
        candidates,
        automorphisms,
    })
}

fn coordinate_check(group: &SymmetryGroup) -> Check {
    let frame = group.frame();
    let elements = group.elements();
    let coords = group.coordinates();
    let round_trip = elements
        .iter()
        .zip(coords)
        .all(|(e, c)| frame.from_coordinates(c).as_ref() == Ok(e));
    let functor = elements.iter().zip(coords).all(|(a, ca)| {
        elements.iter().zip(coords).all(|(b, cb)| {
            frame.to_coordinates(&a.compose(b)).as_ref() == Ok(&ca.compose(cb))
        })
    });
    Check::new(
        "coordinates",
        round_trip && functor,
        format!("round trip: {round_trip}, product law: {functor}"),
    )
}

fn phi_homomorphism_check(group: &SymmetryGroup) -> Check {
    let coords = group.coordinates();
    let ok = coords
        .iter()
        .all(|a| coords.iter().all(|b| phi(&a.compose(b)) == phi(a) * phi(b)));
    Check::new("phi_homomorphism", ok, format!("checked on {} pairs", coords.len().pow(2)))
}
