//! The partition-and-close search: color a generator basis into two
//! degree subspaces, close under the graded bracket, validate, and
//! classify the outcome against the known families. Also a bounded
//! search for degree-preserving isomorphisms in the signed-permutation
//! class.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::families::{all_specs_with_ambient, build, dims_formula, AlgebraSpec, FamilyError};
use crate::graded::{
    check_closure, check_jacobi, close_under_bracket, structure_constants, Degree, GradedBasis,
    GradedError, HomogeneousElement, StructureConstants,
};
use crate::matrix::{Matrix, SpanBasis};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExploreError {
    #[error("invalid generators: {0}")]
    InvalidGenerators(String),
    #[error("per-degree signatures differ: {0:?} vs {1:?}")]
    NotIsomorphicSignature([usize; 4], [usize; 4]),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// One 2-coloring of the generators: bit 0 assigns degree (0,1), bit 1
/// assigns degree (1,0). Neither color class may be empty.
pub struct PartitionTask<'a, S> {
    pub ambient: AlgebraSpec,
    pub generators: &'a [Matrix<S>],
    pub coloring: Vec<u8>,
}

impl<'a, S: Scalar> PartitionTask<'a, S> {
    pub fn new(
        ambient: AlgebraSpec,
        generators: &'a [Matrix<S>],
        coloring: Vec<u8>,
    ) -> Result<Self, ExploreError> {
        if coloring.len() != generators.len() {
            return Err(ExploreError::InvalidGenerators(
                "coloring length differs from generator count".into(),
            ));
        }
        if coloring.iter().all(|&b| b == 0) || coloring.iter().all(|&b| b != 0) {
            return Err(ExploreError::InvalidGenerators("a color class is empty".into()));
        }
        Ok(Self { ambient, generators, coloring })
    }

    fn split(&self) -> (Vec<Matrix<S>>, Vec<Matrix<S>>) {
        let mut g01 = Vec::new();
        let mut g10 = Vec::new();
        for (m, &bit) in self.generators.iter().zip(&self.coloring) {
            if bit == 0 {
                g01.push(m.clone());
            } else {
                g10.push(m.clone());
            }
        }
        (g10, g01)
    }

    fn bitstring(&self) -> String {
        self.coloring.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
    }

    /// Closes the colored generators and classifies the outcome.
    pub fn run(&self, ambient_span: &SpanBasis<S>) -> ClassificationResult {
        self.run_with_candidates(ambient_span, &match_candidates(&self.ambient))
    }

    fn run_with_candidates(
        &self,
        ambient_span: &SpanBasis<S>,
        candidates: &[AlgebraSpec],
    ) -> ClassificationResult {
        let (g10, g01) = self.split();
        let n = self.generators[0].rows();
        let closed = match close_under_bracket(&g10, &g01) {
            Ok(c) => c,
            Err(_) => {
                return ClassificationResult {
                    coloring: self.bitstring(),
                    signature: [0; 4],
                    valid: false,
                    matched_family: None,
                    contained_in_ambient: false,
                };
            }
        };
        let signature = closed.signature();
        let contained = closed.spans.iter().all(|span| {
            span.row_matrices(n, n).unwrap().iter().all(|m| ambient_span.contains(m).unwrap())
        });
        let valid = if closed.direct {
            let mut elements = Vec::new();
            let mut labels = Vec::new();
            for d in Degree::ALL {
                for (idx, m) in
                    closed.spans[d.index()].row_matrices(n, n).unwrap().into_iter().enumerate()
                {
                    elements.push(HomogeneousElement::new(m, d));
                    labels.push(format!("g{}{}_{idx}", d.a1(), d.a2()));
                }
            }
            match GradedBasis::new(n, elements, labels) {
                Ok(basis) => check_closure(&basis).passed && check_jacobi(&basis).passed,
                Err(_) => false,
            }
        } else {
            false
        };
        let matched_family = if valid {
            candidates
                .iter()
                .find(|spec| {
                    dims_formula(spec)
                        .map(|f| Degree::ALL.map(|d| f[&d]) == signature)
                        .unwrap_or(false)
                })
                .copied()
        } else {
            None
        };
        ClassificationResult {
            coloring: self.bitstring(),
            signature,
            valid,
            matched_family,
            contained_in_ambient: contained,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    /// One character per generator: '0' for degree (0,1), '1' for (1,0).
    pub coloring: String,
    /// Per-degree dimensions of the closed spans, canonical degree order.
    pub signature: [usize; 4],
    /// Passed closure and Jacobi after closing.
    pub valid: bool,
    #[serde(serialize_with = "serialize_spec")]
    pub matched_family: Option<AlgebraSpec>,
    pub contained_in_ambient: bool,
}

fn serialize_spec<Ser: serde::Serializer>(
    spec: &Option<AlgebraSpec>,
    ser: Ser,
) -> Result<Ser::Ok, Ser::Error> {
    match spec {
        Some(s) => ser.serialize_some(&s.to_string()),
        None => ser.serialize_none(),
    }
}

/// Family class used to break signature-matching ties: several families
/// can share a dimension signature, so candidates from the ambient's own
/// class are tried first.
fn family_class(spec: &AlgebraSpec) -> u8 {
    match spec {
        AlgebraSpec::SlClassical { .. } | AlgebraSpec::ZzSl { .. } => 0,
        AlgebraSpec::SoOddClassical { .. }
        | AlgebraSpec::ZzSoOdd { .. }
        | AlgebraSpec::ZzSoOddVariant { .. } => 1,
        AlgebraSpec::SpClassical { .. } | AlgebraSpec::ZzSp { .. } => 2,
        AlgebraSpec::SoEvenClassical { .. } | AlgebraSpec::ZzSoEven { .. } => 3,
        AlgebraSpec::ZzSoPqrs { .. } => 4,
    }
}

fn match_candidates(ambient: &AlgebraSpec) -> Vec<AlgebraSpec> {
    let all = all_specs_with_ambient(ambient.ambient_size());
    let (preferred, rest): (Vec<_>, Vec<_>) =
        all.into_iter().partition(|s| family_class(s) == family_class(ambient));
    preferred.into_iter().chain(rest).collect()
}

/// Runs every 2-coloring of the generators up to the global color swap
/// (the first generator is pinned to color 0), in binary counting order.
pub fn run_partition_search<S: Scalar>(
    ambient: &AlgebraSpec,
    generators: &[Matrix<S>],
) -> Result<Vec<ClassificationResult>, ExploreError> {
    ambient.validate()?;
    let n = ambient.ambient_size();
    if generators.is_empty() {
        return Err(ExploreError::InvalidGenerators("no generators supplied".into()));
    }
    if generators.len() > 24 {
        return Err(ExploreError::InvalidGenerators(format!(
            "{} generators give too many colorings",
            generators.len()
        )));
    }
    for (k, m) in generators.iter().enumerate() {
        if !m.is_square() || m.rows() != n {
            return Err(ExploreError::InvalidGenerators(format!(
                "generator {k} is {}x{}, ambient needs {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    let (ambient_basis, _) = build::<S>(ambient)?;
    let ambient_span =
        SpanBasis::from_matrices(n * n, ambient_basis.elements().iter().map(|el| &el.matrix))
            .unwrap();
    let mut probe = SpanBasis::new(n * n);
    for (k, m) in generators.iter().enumerate() {
        if !ambient_span.contains(m).unwrap() {
            return Err(ExploreError::InvalidGenerators(format!(
                "generator {k} lies outside the ambient family"
            )));
        }
        let (next, was_new) = probe.insert(m).unwrap();
        if !was_new {
            return Err(ExploreError::InvalidGenerators(format!(
                "generator {k} is linearly dependent on the previous ones"
            )));
        }
        probe = next;
    }

    let m = generators.len();
    let candidates = match_candidates(ambient);
    let tasks: Vec<u64> = (1..(1u64 << (m - 1))).collect();
    let mut results: Vec<(u64, ClassificationResult)> = tasks
        .into_par_iter()
        .map(|bits| {
            let mut coloring = vec![0u8; m];
            for i in 1..m {
                coloring[i] = ((bits >> (i - 1)) & 1) as u8;
            }
            let task =
                PartitionTask::new(*ambient, generators, coloring).expect("classes nonempty");
            (bits, task.run_with_candidates(&ambient_span, &candidates))
        })
        .collect();
    results.sort_by_key(|(bits, _)| *bits);
    Ok(results.into_iter().map(|(_, r)| r).collect())
}

/// A degree-preserving map sending basis element i of `a` to
/// ±(basis element of `b`), bijectively within each degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoMap {
    /// target[i] = index in b of the image of a's element i.
    pub target: Vec<usize>,
    /// negate[i] = whether the image carries a minus sign.
    pub negate: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    Witness(IsoMap),
    NotFoundWithinBudget { tested: u64, exhausted: bool },
}

/// Deterministic lexicographic next-permutation; false once the last
/// permutation is reached.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

struct DegreeBlockState {
    a_indices: Vec<usize>,
    b_indices: Vec<usize>,
    perm: Vec<usize>,
    signs: u64,
}

impl DegreeBlockState {
    /// Steps to the next (signs, permutation) pair; false on wraparound.
    fn advance(&mut self) -> bool {
        let k = self.a_indices.len();
        if k == 0 {
            return false;
        }
        self.signs += 1;
        if self.signs < (1u64 << k) {
            return true;
        }
        self.signs = 0;
        if next_permutation(&mut self.perm) {
            return true;
        }
        self.perm.sort_unstable();
        false
    }
}

/// Searches degree-preserving invertible maps of the restricted form
/// (per-degree signed permutations of the canonical basis elements) for
/// one that transports the structure constants of `a` exactly onto those
/// of `b`. The budget caps the number of candidate maps tested.
pub fn find_graded_isomorphism<S: Scalar>(
    a: &GradedBasis<S>,
    b: &GradedBasis<S>,
    budget: u64,
) -> Result<IsoOutcome, ExploreError> {
    let sig_a = a.signature();
    let sig_b = b.signature();
    if sig_a != sig_b {
        return Err(ExploreError::NotIsomorphicSignature(sig_a, sig_b));
    }
    let sc_a = structure_constants(a)?;
    let sc_b = structure_constants(b)?;
    let n = a.len();

    let mut blocks: Vec<DegreeBlockState> = Degree::ALL
        .iter()
        .map(|&d| {
            let a_indices: Vec<usize> = (0..n).filter(|&i| a.elements()[i].degree == d).collect();
            let b_indices: Vec<usize> = (0..n).filter(|&i| b.elements()[i].degree == d).collect();
            let perm: Vec<usize> = (0..a_indices.len()).collect();
            DegreeBlockState { a_indices, b_indices, perm, signs: 0 }
        })
        .collect();

    let mut tested = 0u64;
    loop {
        if tested >= budget {
            return Ok(IsoOutcome::NotFoundWithinBudget { tested, exhausted: false });
        }
        let mut target = vec![0usize; n];
        let mut negate = vec![false; n];
        for block in &blocks {
            for (t, &ai) in block.a_indices.iter().enumerate() {
                target[ai] = block.b_indices[block.perm[t]];
                negate[ai] = (block.signs >> t) & 1 == 1;
            }
        }
        tested += 1;
        if transports_structure(&sc_a, &sc_b, n, &target, &negate) {
            return Ok(IsoOutcome::Witness(IsoMap { target, negate }));
        }
        // odometer over the degree blocks, last block fastest
        let mut pos = blocks.len();
        loop {
            if pos == 0 {
                return Ok(IsoOutcome::NotFoundWithinBudget { tested, exhausted: true });
            }
            pos -= 1;
            if blocks[pos].advance() {
                break;
            }
        }
    }
}

/// φ(⟦x_i, x_j⟧) = ⟦φ(x_i), φ(x_j)⟧ for all ordered basis pairs, where
/// φ(x_i) = ±y_target[i]: the terms c·s_i·s_j·s_k at the mapped indices
/// must reproduce b's tensor, and zero brackets must map to zero brackets.
fn transports_structure<S: Scalar>(
    sc_a: &StructureConstants<S>,
    sc_b: &StructureConstants<S>,
    n: usize,
    target: &[usize],
    negate: &[bool],
) -> bool {
    for i in 0..n {
        for j in 0..n {
            let terms_a = sc_a.terms(i, j);
            let terms_b = sc_b.terms(target[i], target[j]);
            if terms_a.len() != terms_b.len() {
                return false;
            }
            if terms_a.is_empty() {
                continue;
            }
            let flip_ij = negate[i] ^ negate[j];
            let mut transported: Vec<(usize, S)> = terms_a
                .iter()
                .map(|(k, c)| {
                    let flip = flip_ij ^ negate[*k];
                    (target[*k], if flip { -c.clone() } else { c.clone() })
                })
                .collect();
            transported.sort_by_key(|(k, _)| *k);
            if transported != terms_b {
                return false;
            }
        }
    }
    true
}
