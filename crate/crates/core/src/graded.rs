//! The Z2×Z2 degree algebra, the graded bracket, and the verification
//! and generation engines.
//!
//! The bracket of homogeneous elements x, y with degrees a, b is
//! x·y − (−1)^(a·b) y·x with the pairing a·b = a1·b2 − a2·b1 (mod 2):
//! a commutator when the pairing is 0 and an anticommutator when it
//! is 1. Brackets land in the degree-(a+b) component, satisfy graded
//! antisymmetry, and satisfy the graded Jacobi identity whenever they
//! come from an associative product.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::{anticommutator, commutator, Expander, Matrix, MatrixError, SpanBasis};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("generator lists must both be nonempty and span something")]
    EmptyGenerators,
    #[error("basis element {index} is zero")]
    ZeroBasisElement { index: usize },
    #[error("basis elements are linearly dependent")]
    DependentBasisElements,
    #[error("the four degree components do not form a direct sum")]
    NotDirectSum,
    #[error("bracket of basis elements {i} and {j} lies outside the basis span")]
    NotClosed { i: usize, j: usize },
    #[error("degree permutation must fix (0,0) and permute the other three degrees")]
    InvalidPermutation,
}

/// Element of Z2×Z2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Degree {
    a1: u8,
    a2: u8,
}

impl Degree {
    pub const D00: Degree = Degree { a1: 0, a2: 0 };
    pub const D01: Degree = Degree { a1: 0, a2: 1 };
    pub const D10: Degree = Degree { a1: 1, a2: 0 };
    pub const D11: Degree = Degree { a1: 1, a2: 1 };

    /// Canonical order used everywhere: (0,0), (0,1), (1,0), (1,1).
    pub const ALL: [Degree; 4] = [Self::D00, Self::D01, Self::D10, Self::D11];

    pub fn new(a1: u8, a2: u8) -> Self {
        Self { a1: a1 & 1, a2: a2 & 1 }
    }

    pub fn a1(self) -> u8 {
        self.a1
    }

    pub fn a2(self) -> u8 {
        self.a2
    }

    /// Componentwise sum mod 2.
    pub fn add(self, other: Degree) -> Degree {
        Degree { a1: self.a1 ^ other.a1, a2: self.a2 ^ other.a2 }
    }

    /// The sign pairing a·b = a1·b2 − a2·b1 (mod 2).
    pub fn pairing(self, other: Degree) -> u8 {
        (self.a1 & other.a2) ^ (self.a2 & other.a1)
    }

    pub fn is_zero(self) -> bool {
        self == Self::D00
    }

    /// Position in [`Degree::ALL`].
    pub fn index(self) -> usize {
        (self.a1 * 2 + self.a2) as usize
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

/// A square matrix together with its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousElement<S> {
    pub matrix: Matrix<S>,
    pub degree: Degree,
}

impl<S: Scalar> HomogeneousElement<S> {
    pub fn new(matrix: Matrix<S>, degree: Degree) -> Self {
        Self { matrix, degree }
    }
}

/// ⟦x, y⟧: commutator or anticommutator as selected by the pairing, with
/// the sum degree attached.
pub fn graded_bracket<S: Scalar>(
    x: &HomogeneousElement<S>,
    y: &HomogeneousElement<S>,
) -> Result<HomogeneousElement<S>, MatrixError> {
    let m = if x.degree.pairing(y.degree) == 0 {
        commutator(&x.matrix, &y.matrix)?
    } else {
        anticommutator(&x.matrix, &y.matrix)?
    };
    Ok(HomogeneousElement::new(m, x.degree.add(y.degree)))
}

/// An ordered list of labelled homogeneous basis matrices: the concrete
/// realization of a graded algebra. Elements are nonzero and linearly
/// independent.
#[derive(Debug, Clone)]
pub struct GradedBasis<S> {
    dim_ambient: usize,
    elements: Vec<HomogeneousElement<S>>,
    labels: Vec<String>,
}

impl<S: Scalar> GradedBasis<S> {
    pub fn new(
        dim_ambient: usize,
        elements: Vec<HomogeneousElement<S>>,
        labels: Vec<String>,
    ) -> Result<Self, GradedError> {
        if labels.len() != elements.len() {
            return Err(MatrixError::ShapeMismatch("one label per element required".into()).into());
        }
        let mut span = SpanBasis::new(dim_ambient * dim_ambient);
        for (index, el) in elements.iter().enumerate() {
            if !el.matrix.is_square() || el.matrix.rows() != dim_ambient {
                return Err(MatrixError::ShapeMismatch(format!(
                    "element {index} is {}x{}, ambient is {dim_ambient}",
                    el.matrix.rows(),
                    el.matrix.cols()
                ))
                .into());
            }
            if el.matrix.is_zero() {
                return Err(GradedError::ZeroBasisElement { index });
            }
            if !span.insert_vec_in_place(el.matrix.vectorize()) {
                return Err(GradedError::DependentBasisElements);
            }
        }
        Ok(Self { dim_ambient, elements, labels })
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HomogeneousElement<S>] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Per-degree dimensions in the canonical degree order.
    pub fn signature(&self) -> [usize; 4] {
        let mut sig = [0; 4];
        for el in &self.elements {
            sig[el.degree.index()] += 1;
        }
        sig
    }

    pub fn component(&self, degree: Degree) -> Vec<&HomogeneousElement<S>> {
        self.elements.iter().filter(|el| el.degree == degree).collect()
    }

    pub fn component_matrices(&self, degree: Degree) -> Vec<Matrix<S>> {
        self.elements
            .iter()
            .filter(|el| el.degree == degree)
            .map(|el| el.matrix.clone())
            .collect()
    }

    pub fn span_of_degree(&self, degree: Degree) -> SpanBasis<S> {
        let items: Vec<&Matrix<S>> = self
            .elements
            .iter()
            .filter(|el| el.degree == degree)
            .map(|el| &el.matrix)
            .collect();
        SpanBasis::from_matrices(self.dim_ambient * self.dim_ambient, items)
            .expect("basis elements match the ambient size")
    }

    /// Spans of all four components, indexed by `Degree::index`.
    pub fn spans_by_degree(&self) -> [SpanBasis<S>; 4] {
        Degree::ALL.map(|d| self.span_of_degree(d))
    }
}

/// Checks that every bracket of basis pairs lies in the span of the
/// basis elements of the sum degree. Stops at the first violation.
pub fn check_closure<S: Scalar>(basis: &GradedBasis<S>) -> Report {
    let mut report = Report::new("closure");
    let spans = basis.spans_by_degree();
    let els = basis.elements();
    for (i, x) in els.iter().enumerate() {
        for (j, y) in els.iter().enumerate() {
            let z = graded_bracket(x, y).expect("basis elements share the ambient size");
            if z.matrix.is_zero() {
                continue;
            }
            if !spans[z.degree.index()]
                .contains(&z.matrix)
                .expect("bracket matches ambient size")
            {
                report.fail(
                    "closure",
                    format!(
                        "i={i},j={j},labels={}|{},target_degree={}",
                        basis.labels()[i],
                        basis.labels()[j],
                        z.degree
                    ),
                    Some(z.matrix.to_string()),
                );
                return report;
            }
        }
    }
    report.pass("closure", format!("pairs={}", els.len() * els.len()));
    report
}

/// Evaluates the graded Jacobi identity on every ordered basis triple:
/// ⟦x,⟦y,z⟧⟧ = ⟦⟦x,y⟧,z⟧ + (−1)^(a·b) ⟦y,⟦x,z⟧⟧.
/// Exhaustive; reports the first violating triple in iteration order.
pub fn check_jacobi<S: Scalar>(basis: &GradedBasis<S>) -> Report {
    let mut report = Report::new("jacobi");
    let els = basis.elements();
    let n = els.len();
    if n == 0 {
        report.pass("jacobi", "triples=0");
        return report;
    }
    // pair brackets are shared by all triples
    let pair: Vec<Vec<HomogeneousElement<S>>> = els
        .par_iter()
        .map(|x| {
            els.iter()
                .map(|y| graded_bracket(x, y).expect("equal ambient sizes"))
                .collect()
        })
        .collect();

    let violation = (0..n * n * n).into_par_iter().find_first(|&t| {
        let i = t / (n * n);
        let j = (t / n) % n;
        let k = t % n;
        let lhs = graded_bracket(&els[i], &pair[j][k]).unwrap();
        let rhs1 = graded_bracket(&pair[i][j], &els[k]).unwrap();
        let rhs2 = graded_bracket(&els[j], &pair[i][k]).unwrap();
        let mut residual = lhs.matrix.sub(&rhs1.matrix).unwrap();
        residual = if els[i].degree.pairing(els[j].degree) == 0 {
            residual.sub(&rhs2.matrix).unwrap()
        } else {
            residual.add(&rhs2.matrix).unwrap()
        };
        !residual.is_zero()
    });

    match violation {
        Some(t) => {
            let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
            let lhs = graded_bracket(&els[i], &pair[j][k]).unwrap();
            let rhs1 = graded_bracket(&pair[i][j], &els[k]).unwrap();
            let rhs2 = graded_bracket(&els[j], &pair[i][k]).unwrap();
            let mut residual = lhs.matrix.sub(&rhs1.matrix).unwrap();
            residual = if els[i].degree.pairing(els[j].degree) == 0 {
                residual.sub(&rhs2.matrix).unwrap()
            } else {
                residual.add(&rhs2.matrix).unwrap()
            };
            report.fail(
                "jacobi",
                format!(
                    "i={i},j={j},k={k},labels={}|{}|{}",
                    basis.labels()[i],
                    basis.labels()[j],
                    basis.labels()[k]
                ),
                Some(residual.to_string()),
            );
        }
        None => report.pass("jacobi", format!("triples={}", n * n * n)),
    }
    report
}

/// The four accumulated spans of a bracket closure run.
pub struct ClosedSpans<S> {
    pub spans: [SpanBasis<S>; 4],
    /// Number of sweeps that inserted a new element; 1 means the fixed
    /// point was reached after one bracket level.
    pub rounds: usize,
    /// Whether the four spans form a direct sum.
    pub direct: bool,
}

impl<S: Scalar> ClosedSpans<S> {
    pub fn signature(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|k| self.spans[k].rank())
    }
}

/// Iterates all graded brackets of the two seed components to a fixed
/// point. A bracket is inserted into its sum-degree component when it
/// lies outside the union of everything accumulated so far.
pub fn close_under_bracket<S: Scalar>(
    g10: &[Matrix<S>],
    g01: &[Matrix<S>],
) -> Result<ClosedSpans<S>, GradedError> {
    if g10.is_empty() || g01.is_empty() {
        return Err(GradedError::EmptyGenerators);
    }
    let n = g10[0].rows();
    for m in g10.iter().chain(g01) {
        if !m.is_square() || m.rows() != n {
            return Err(MatrixError::ShapeMismatch(format!(
                "generators must all be {n}x{n}, found {}x{}",
                m.rows(),
                m.cols()
            ))
            .into());
        }
    }
    let dim2 = n * n;
    let mut spans: [SpanBasis<S>; 4] = [
        SpanBasis::new(dim2),
        SpanBasis::new(dim2),
        SpanBasis::new(dim2),
        SpanBasis::new(dim2),
    ];
    let mut total = SpanBasis::new(dim2);
    for m in g01 {
        spans[Degree::D01.index()].insert_vec_in_place(m.vectorize());
        total.insert_vec_in_place(m.vectorize());
    }
    for m in g10 {
        spans[Degree::D10.index()].insert_vec_in_place(m.vectorize());
        total.insert_vec_in_place(m.vectorize());
    }
    if spans[Degree::D01.index()].rank() == 0 || spans[Degree::D10.index()].rank() == 0 {
        return Err(GradedError::EmptyGenerators);
    }

    let mut rounds = 0;
    loop {
        let snapshot: Vec<(Degree, Vec<Matrix<S>>)> = Degree::ALL
            .iter()
            .map(|&d| (d, spans[d.index()].row_matrices(n, n).unwrap()))
            .collect();
        let mut added = false;
        for (da, xs) in &snapshot {
            for (db, ys) in &snapshot {
                let target = da.add(*db);
                for x in xs {
                    let hx = HomogeneousElement::new(x.clone(), *da);
                    for y in ys {
                        let hy = HomogeneousElement::new(y.clone(), *db);
                        let z = graded_bracket(&hx, &hy)?;
                        if z.matrix.is_zero() {
                            continue;
                        }
                        if total.insert_vec_in_place(z.matrix.vectorize()) {
                            spans[target.index()].insert_vec_in_place(z.matrix.vectorize());
                            added = true;
                        }
                    }
                }
            }
        }
        if !added {
            break;
        }
        rounds += 1;
    }
    let direct = spans.iter().map(SpanBasis::rank).sum::<usize>() == total.rank();
    Ok(ClosedSpans { spans, rounds, direct })
}

/// Result of [`generate`].
pub struct Generated<S: Scalar> {
    pub basis: GradedBasis<S>,
    /// Sweeps that added new elements; the one-level generation property
    /// holds exactly when this is at most 1.
    pub rounds: usize,
    /// Whether every bracket of the result lies in the component of its
    /// sum degree (the grading is consistent with the seed coloring).
    pub consistent: bool,
}

/// Assigns degree (1,0) to the first list and (0,1) to the second,
/// closes under the graded bracket, and returns the closed basis in
/// canonical order: degree-major, rref-canonical inside each degree.
pub fn generate<S: Scalar>(
    g10: &[Matrix<S>],
    g01: &[Matrix<S>],
) -> Result<Generated<S>, GradedError> {
    let closed = close_under_bracket(g10, g01)?;
    if !closed.direct {
        return Err(GradedError::NotDirectSum);
    }
    let n = g10[0].rows();
    let mut elements = Vec::new();
    let mut labels = Vec::new();
    for d in Degree::ALL {
        for (idx, m) in closed.spans[d.index()].row_matrices(n, n).unwrap().into_iter().enumerate()
        {
            elements.push(HomogeneousElement::new(m, d));
            labels.push(format!("g{}{}_{idx}", d.a1(), d.a2()));
        }
    }
    let basis = GradedBasis::new(n, elements, labels)?;
    let consistent = check_closure(&basis).passed;
    Ok(Generated { basis, rounds: closed.rounds, consistent })
}

/// Sparse structure constants c_ij^k with ⟦x_i, x_j⟧ = Σ_k c_ij^k x_k.
#[derive(Debug, Clone)]
pub struct StructureConstants<S> {
    pub basis_labels: Vec<String>,
    pub degree_of: Vec<Degree>,
    /// (i, j) ↦ nonzero terms (k, c), sorted by k. Zero brackets are absent.
    pub entries: BTreeMap<(usize, usize), Vec<(usize, S)>>,
}

impl<S: Scalar> StructureConstants<S> {
    pub fn terms(&self, i: usize, j: usize) -> &[(usize, S)] {
        self.entries.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    /// Rebuilds ⟦x_i, x_j⟧ from the tensor.
    pub fn reconstruct(&self, basis: &GradedBasis<S>, i: usize, j: usize) -> Matrix<S> {
        let n = basis.dim_ambient();
        let mut acc = Matrix::zero(n, n);
        for (k, c) in self.terms(i, j) {
            acc = acc.add(&basis.elements()[*k].matrix.scale(c)).unwrap();
        }
        acc
    }
}

/// Expands every bracket of basis pairs in the basis. Fails with
/// NotClosed if some bracket lies outside the span.
pub fn structure_constants<S: Scalar>(
    basis: &GradedBasis<S>,
) -> Result<StructureConstants<S>, GradedError> {
    let vectors: Vec<Vec<S>> = basis.elements().iter().map(|el| el.matrix.vectorize()).collect();
    let expander = Expander::new(&vectors).ok_or(GradedError::DependentBasisElements)?;
    let mut entries = BTreeMap::new();
    for (i, x) in basis.elements().iter().enumerate() {
        for (j, y) in basis.elements().iter().enumerate() {
            let z = graded_bracket(x, y)?;
            if z.matrix.is_zero() {
                continue;
            }
            let coeffs = expander
                .expand(&z.matrix.vectorize())
                .ok_or(GradedError::NotClosed { i, j })?;
            let terms: Vec<(usize, S)> = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            debug_assert!(terms
                .iter()
                .all(|(k, _)| basis.elements()[*k].degree == z.degree));
            if !terms.is_empty() {
                entries.insert((i, j), terms);
            }
        }
    }
    Ok(StructureConstants {
        basis_labels: basis.labels().to_vec(),
        degree_of: basis.elements().iter().map(|el| el.degree).collect(),
        entries,
    })
}

/// A permutation of the three nonzero degrees; (0,0) is always fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreePermutation {
    images: [Degree; 4],
}

impl DegreePermutation {
    pub fn identity() -> Self {
        Self { images: Degree::ALL }
    }

    /// Builds the permutation (0,1) ↦ img01, (1,0) ↦ img10, (1,1) ↦ img11.
    pub fn from_images(img01: Degree, img10: Degree, img11: Degree) -> Result<Self, GradedError> {
        let mut seen = [false; 4];
        for img in [img01, img10, img11] {
            if img.is_zero() || seen[img.index()] {
                return Err(GradedError::InvalidPermutation);
            }
            seen[img.index()] = true;
        }
        let mut images = [Degree::D00; 4];
        images[Degree::D01.index()] = img01;
        images[Degree::D10.index()] = img10;
        images[Degree::D11.index()] = img11;
        Ok(Self { images })
    }

    /// All six permutations, in a fixed order.
    pub fn all() -> Vec<Self> {
        let nz = [Degree::D01, Degree::D10, Degree::D11];
        let mut out = Vec::new();
        for &a in &nz {
            for &b in &nz {
                if b == a {
                    continue;
                }
                let c = nz.iter().copied().find(|&d| d != a && d != b).unwrap();
                out.push(Self::from_images(a, b, c).unwrap());
            }
        }
        out
    }

    pub fn apply(&self, d: Degree) -> Degree {
        self.images[d.index()]
    }
}

impl fmt::Display for DegreePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(0,1)->{} (1,0)->{} (1,1)->{}",
            self.apply(Degree::D01),
            self.apply(Degree::D10),
            self.apply(Degree::D11)
        )
    }
}

/// Relabels every element's degree through the permutation, keeping the
/// element order. The result is again a valid graded algebra.
pub fn permute_grading<S: Scalar>(
    basis: &GradedBasis<S>,
    perm: &DegreePermutation,
) -> Result<GradedBasis<S>, GradedError> {
    let elements = basis
        .elements()
        .iter()
        .map(|el| HomogeneousElement::new(el.matrix.clone(), perm.apply(el.degree)))
        .collect();
    GradedBasis::new(basis.dim_ambient(), elements, basis.labels().to_vec())
}

/// JSON document for structure constants: the interchange format of the
/// CLI and the tests.
#[derive(Debug, Serialize)]
pub struct StructureConstantsDoc {
    pub ambient: usize,
    pub basis: Vec<BasisElementDoc>,
    pub brackets: Vec<BracketDoc>,
}

#[derive(Debug, Serialize)]
pub struct BasisElementDoc {
    pub label: String,
    pub degree: [u8; 2],
    pub matrix: String,
}

#[derive(Debug, Serialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Serialize)]
pub struct TermDoc {
    pub k: usize,
    pub c: String,
}

impl StructureConstants<crate::scalar::FieldElem> {
    pub fn to_doc(&self, basis: &GradedBasis<crate::scalar::FieldElem>) -> StructureConstantsDoc {
        StructureConstantsDoc {
            ambient: basis.dim_ambient(),
            basis: basis
                .elements()
                .iter()
                .zip(basis.labels())
                .map(|(el, label)| BasisElementDoc {
                    label: label.clone(),
                    degree: [el.degree.a1(), el.degree.a2()],
                    matrix: el.matrix.to_string(),
                })
                .collect(),
            brackets: self
                .entries
                .iter()
                .map(|(&(i, j), terms)| BracketDoc {
                    i,
                    j,
                    terms: terms
                        .iter()
                        .map(|(k, c)| TermDoc { k: *k, c: c.canonical_string() })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldElem;
    use num::{One, Zero};

    type Mat = Matrix<FieldElem>;

    fn e(n: usize, j: usize, k: usize) -> Mat {
        Matrix::elementary(n, n, j, k).unwrap()
    }

    #[test]
    fn degree_arithmetic() {
        assert_eq!(Degree::D10.add(Degree::D01), Degree::D11);
        assert_eq!(Degree::D11.add(Degree::D11), Degree::D00);
        for d in Degree::ALL {
            assert_eq!(Degree::D00.add(d), d);
            assert_eq!(d.pairing(d), 0);
        }
        assert_eq!(Degree::D10.pairing(Degree::D01), 1);
        assert_eq!(Degree::D10.pairing(Degree::D11), 1);
        assert_eq!(Degree::D01.pairing(Degree::D10), 1);
        assert_eq!(Degree::D00.pairing(Degree::D11), 0);
    }

    fn lambda(k: usize) -> Mat {
        let i = FieldElem::i();
        match k {
            1 => e(3, 1, 2).add(&e(3, 2, 1)).unwrap(),
            2 => e(3, 1, 2).scale(&-i.clone()).add(&e(3, 2, 1).scale(&i)).unwrap(),
            3 => e(3, 1, 1).sub(&e(3, 2, 2)).unwrap(),
            4 => e(3, 1, 3).add(&e(3, 3, 1)).unwrap(),
            5 => e(3, 1, 3).scale(&-i.clone()).add(&e(3, 3, 1).scale(&i)).unwrap(),
            6 => e(3, 2, 3).add(&e(3, 3, 2)).unwrap(),
            7 => e(3, 2, 3).scale(&-i.clone()).add(&e(3, 3, 2).scale(&i)).unwrap(),
            // sqrt(3)·lambda_8 = diag(1, 1, -2), spanning the same line
            8 => {
                let mut m = e(3, 1, 1).add(&e(3, 2, 2)).unwrap();
                m = m.sub(&e(3, 3, 3).scale(&FieldElem::from_int(2))).unwrap();
                m
            }
            _ => unreachable!(),
        }
    }

    fn gell_mann_degree(k: usize) -> Degree {
        match k {
            3 | 8 => Degree::D00,
            1 | 2 => Degree::D01,
            4 | 5 => Degree::D10,
            6 | 7 => Degree::D11,
            _ => unreachable!(),
        }
    }

    fn gell_mann_basis() -> GradedBasis<FieldElem> {
        let elements = (1..=8)
            .map(|k| HomogeneousElement::new(lambda(k), gell_mann_degree(k)))
            .collect();
        let labels = (1..=8).map(|k| format!("l{k}")).collect();
        GradedBasis::new(3, elements, labels).unwrap()
    }

    #[test]
    fn graded_bracket_examples() {
        let l1 = HomogeneousElement::new(lambda(1), Degree::D01);
        let l4 = HomogeneousElement::new(lambda(4), Degree::D10);
        let b = graded_bracket(&l1, &l4).unwrap();
        assert_eq!(b.matrix, lambda(6));
        assert_eq!(b.degree, Degree::D11);

        let x = HomogeneousElement::new(lambda(6), Degree::D11);
        let same = graded_bracket(&x, &x).unwrap();
        assert!(same.matrix.is_zero());
        assert_eq!(same.degree, Degree::D00);

        let l6 = HomogeneousElement::new(lambda(6), Degree::D11);
        let b = graded_bracket(&l4, &l6).unwrap();
        assert_eq!(b.matrix, lambda(1));
        assert_eq!(b.degree, Degree::D01);
    }

    #[test]
    fn jacobi_passes_on_gell_mann() {
        let basis = gell_mann_basis();
        assert!(check_jacobi(&basis).passed);
        assert!(check_closure(&basis).passed);
    }

    #[test]
    fn jacobi_passes_on_singleton() {
        let basis = GradedBasis::new(
            2,
            vec![HomogeneousElement::new(e(2, 1, 1), Degree::D00)],
            vec!["x".into()],
        )
        .unwrap();
        assert!(check_jacobi(&basis).passed);
    }

    #[test]
    fn corrupted_grading_is_caught_by_closure_not_jacobi() {
        // flip l4 from (1,0) to (0,1); several bracket branches change
        let elements: Vec<HomogeneousElement<FieldElem>> = (1..=8)
            .map(|k| {
                let d = if k == 4 { Degree::D01 } else { gell_mann_degree(k) };
                HomogeneousElement::new(lambda(k), d)
            })
            .collect();
        let labels = (1..=8).map(|k| format!("l{k}")).collect();
        let basis = GradedBasis::new(3, elements.clone(), labels).unwrap();

        // independent oracle: evaluate the identity directly on all 512
        // ordered triples. The pairing is a bicharacter, so the identity
        // holds for any relabeling of degrees on an associative product;
        // the brute force confirms there is no violating triple.
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let lhs = graded_bracket(
                        &elements[i],
                        &graded_bracket(&elements[j], &elements[k]).unwrap(),
                    )
                    .unwrap();
                    let rhs1 = graded_bracket(
                        &graded_bracket(&elements[i], &elements[j]).unwrap(),
                        &elements[k],
                    )
                    .unwrap();
                    let rhs2 = graded_bracket(
                        &elements[j],
                        &graded_bracket(&elements[i], &elements[k]).unwrap(),
                    )
                    .unwrap();
                    let mut r = lhs.matrix.sub(&rhs1.matrix).unwrap();
                    r = if elements[i].degree.pairing(elements[j].degree) == 0 {
                        r.sub(&rhs2.matrix).unwrap()
                    } else {
                        r.add(&rhs2.matrix).unwrap()
                    };
                    assert!(r.is_zero(), "unexpected jacobi violation at {i},{j},{k}");
                }
            }
        }
        assert!(check_jacobi(&basis).passed);

        // what the corruption does break is closure: ⟦l4, l1⟧ now takes the
        // commutator branch and lands outside the (0,0) span
        let report = check_closure(&basis);
        assert!(!report.passed);
    }

    #[test]
    fn closure_detects_escaping_bracket() {
        let basis = GradedBasis::new(
            3,
            vec![
                HomogeneousElement::new(e(3, 1, 2), Degree::D10),
                HomogeneousElement::new(e(3, 2, 3), Degree::D10),
            ],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        let report = check_closure(&basis);
        assert!(!report.passed);
        assert!(report.items[0].indices.contains("i=0,j=1"));
    }

    #[test]
    fn closure_passes_on_single_diagonal_element() {
        let basis = GradedBasis::new(
            2,
            vec![HomogeneousElement::new(e(2, 1, 1), Degree::D00)],
            vec!["h".into()],
        )
        .unwrap();
        assert!(check_closure(&basis).passed);
    }

    #[test]
    fn generate_gell_mann_components() {
        let g10 = vec![lambda(4), lambda(5)];
        let g01 = vec![lambda(1), lambda(2)];
        let gen = generate(&g10, &g01).unwrap();
        assert_eq!(gen.basis.signature(), [2, 2, 2, 2]);
        assert_eq!(gen.basis.len(), 8);
        assert!(gen.consistent);
        assert!(gen.rounds <= 1);
    }

    #[test]
    fn generate_matrix_units_2x2() {
        // hand closure: ⟦e12,e12⟧ = 0, ⟦e21,e21⟧ = 0, ⟦e12,e21⟧ = e11+e22;
        // further brackets stay inside the accumulated span
        let gen = generate(&[e(2, 1, 2)], &[e(2, 2, 1)]).unwrap();
        assert_eq!(gen.basis.signature(), [0, 1, 1, 1]);
        // the identity matrix sits in the (1,1) component
        let id = Matrix::identity(2);
        assert!(gen.basis.span_of_degree(Degree::D11).contains(&id).unwrap());
        // the coloring is not a consistent grading: ⟦1, e12⟧ = 2·e12 has
        // degree (0,1) but lies in the (1,0) component
        assert!(!gen.consistent);
    }

    #[test]
    fn generate_rejects_empty_sides() {
        assert_eq!(
            generate::<FieldElem>(&[], &[e(2, 1, 2)]).err(),
            Some(GradedError::EmptyGenerators)
        );
        let z = Mat::zero(2, 2);
        assert_eq!(generate(&[z], &[e(2, 1, 2)]).err(), Some(GradedError::EmptyGenerators));
    }

    #[test]
    fn structure_constants_of_gell_mann() {
        let basis = gell_mann_basis();
        let sc = structure_constants(&basis).unwrap();
        // {l1, l4} = l6 (indices are 0-based)
        let terms = sc.terms(0, 3);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, 5);
        assert_eq!(terms[0].1, FieldElem::one());
        // ⟦x, x⟧ with pairing 0 is empty
        assert!(sc.terms(2, 2).is_empty());
        // {l4, l7} = -l2
        let terms = sc.terms(3, 6);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, 1);
        assert_eq!(terms[0].1, FieldElem::from_int(-1));
    }

    #[test]
    fn structure_constants_roundtrip_and_symmetry() {
        let basis = gell_mann_basis();
        let sc = structure_constants(&basis).unwrap();
        for (i, x) in basis.elements().iter().enumerate() {
            for (j, y) in basis.elements().iter().enumerate() {
                let direct = graded_bracket(x, y).unwrap();
                assert_eq!(sc.reconstruct(&basis, i, j), direct.matrix);
                // c_ji = -(-1)^(a·b) c_ij
                let sign = x.degree.pairing(y.degree);
                let mut mirrored: Vec<(usize, FieldElem)> = sc
                    .terms(i, j)
                    .iter()
                    .map(|(k, c)| {
                        let c = if sign == 0 { -c.clone() } else { -(-c.clone()) };
                        (*k, c)
                    })
                    .collect();
                mirrored.retain(|(_, c)| !c.is_zero());
                assert_eq!(sc.terms(j, i), mirrored.as_slice());
            }
        }
    }

    #[test]
    fn structure_constants_fail_when_not_closed() {
        let basis = GradedBasis::new(
            3,
            vec![
                HomogeneousElement::new(e(3, 1, 2), Degree::D10),
                HomogeneousElement::new(e(3, 2, 3), Degree::D10),
            ],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        assert_eq!(structure_constants(&basis).err(), Some(GradedError::NotClosed { i: 0, j: 1 }));
    }

    #[test]
    fn permutations() {
        let basis = gell_mann_basis();
        let id = DegreePermutation::identity();
        let same = permute_grading(&basis, &id).unwrap();
        assert_eq!(same.elements(), basis.elements());

        assert!(DegreePermutation::from_images(Degree::D00, Degree::D10, Degree::D11).is_err());
        assert!(DegreePermutation::from_images(Degree::D01, Degree::D01, Degree::D11).is_err());

        assert_eq!(DegreePermutation::all().len(), 6);
        for perm in DegreePermutation::all() {
            let permuted = permute_grading(&basis, &perm).unwrap();
            assert!(check_closure(&permuted).passed, "perm {perm}");
            assert!(check_jacobi(&permuted).passed, "perm {perm}");
        }
    }

    #[test]
    fn generate_is_idempotent_on_gell_mann() {
        let gen = generate(&[lambda(4), lambda(5)], &[lambda(1), lambda(2)]).unwrap();
        let g10 = gen.basis.component_matrices(Degree::D10);
        let g01 = gen.basis.component_matrices(Degree::D01);
        let again = generate(&g10, &g01).unwrap();
        for d in Degree::ALL {
            assert!(gen
                .basis
                .span_of_degree(d)
                .equal(&again.basis.span_of_degree(d))
                .unwrap());
        }
    }
}
