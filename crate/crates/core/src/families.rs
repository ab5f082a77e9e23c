//! Constructors for the defining-matrix families: the classical forms of
//! sl(n+1), so(2n+1), sp(2n), so(2n) and their Z2×Z2-graded analogues,
//! each as a grading mask (block degrees plus symmetry and dependence
//! constraints) with an explicit homogeneous basis and closed-form
//! per-degree dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graded::{Degree, GradedBasis, GradedError, HomogeneousElement};
use crate::matrix::{Matrix, MatrixError};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),
    #[error("matrix is not a member of the family: {0}")]
    NotMember(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// A family name plus its parameters. The string grammar used by the CLI
/// is e.g. "zz-sl:1,1,1,0", "zz-so-odd:2,1", "sl:2".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    SlClassical { n: usize },
    SoOddClassical { n: usize },
    SpClassical { n: usize },
    SoEvenClassical { n: usize },
    ZzSl { p: usize, q: usize, r: usize, s: usize },
    ZzSoPqrs { p: usize, q: usize, r: usize, s: usize },
    ZzSoOdd { n: usize, p: usize },
    ZzSoOddVariant { n: usize, p: usize },
    ZzSp { n: usize, p: usize },
    ZzSoEven { n: usize, p: usize },
}

impl AlgebraSpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            AlgebraSpec::SlClassical { n }
            | AlgebraSpec::SoOddClassical { n }
            | AlgebraSpec::SpClassical { n }
            | AlgebraSpec::SoEvenClassical { n } => {
                if n < 1 {
                    return Err(FamilyError::InvalidSpec(format!("{self}: n must be at least 1")));
                }
            }
            AlgebraSpec::ZzSl { p, q, r, s } | AlgebraSpec::ZzSoPqrs { p, q, r, s } => {
                if p + q + r + s < 2 {
                    return Err(FamilyError::InvalidSpec(format!(
                        "{self}: p+q+r+s must be at least 2"
                    )));
                }
            }
            AlgebraSpec::ZzSoOdd { n, p }
            | AlgebraSpec::ZzSoOddVariant { n, p }
            | AlgebraSpec::ZzSp { n, p }
            | AlgebraSpec::ZzSoEven { n, p } => {
                if p < 1 || p >= n {
                    return Err(FamilyError::InvalidSpec(format!(
                        "{self}: requires 1 <= p < n"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Size of the ambient square matrices.
    pub fn ambient_size(&self) -> usize {
        match *self {
            AlgebraSpec::SlClassical { n } => n + 1,
            AlgebraSpec::SoOddClassical { n } => 2 * n + 1,
            AlgebraSpec::SpClassical { n } | AlgebraSpec::SoEvenClassical { n } => 2 * n,
            AlgebraSpec::ZzSl { p, q, r, s } | AlgebraSpec::ZzSoPqrs { p, q, r, s } => {
                p + q + r + s
            }
            AlgebraSpec::ZzSoOdd { n, .. } | AlgebraSpec::ZzSoOddVariant { n, .. } => 2 * n + 1,
            AlgebraSpec::ZzSp { n, .. } | AlgebraSpec::ZzSoEven { n, .. } => 2 * n,
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(
            self,
            AlgebraSpec::SlClassical { .. }
                | AlgebraSpec::SoOddClassical { .. }
                | AlgebraSpec::SpClassical { .. }
                | AlgebraSpec::SoEvenClassical { .. }
        )
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraSpec::SlClassical { n } => write!(f, "sl:{n}"),
            AlgebraSpec::SoOddClassical { n } => write!(f, "so-odd:{n}"),
            AlgebraSpec::SpClassical { n } => write!(f, "sp:{n}"),
            AlgebraSpec::SoEvenClassical { n } => write!(f, "so-even:{n}"),
            AlgebraSpec::ZzSl { p, q, r, s } => write!(f, "zz-sl:{p},{q},{r},{s}"),
            AlgebraSpec::ZzSoPqrs { p, q, r, s } => write!(f, "zz-so-pqrs:{p},{q},{r},{s}"),
            AlgebraSpec::ZzSoOdd { n, p } => write!(f, "zz-so-odd:{n},{p}"),
            AlgebraSpec::ZzSoOddVariant { n, p } => write!(f, "zz-so-odd-b:{n},{p}"),
            AlgebraSpec::ZzSp { n, p } => write!(f, "zz-sp:{n},{p}"),
            AlgebraSpec::ZzSoEven { n, p } => write!(f, "zz-so-even:{n},{p}"),
        }
    }
}

fn parse_params(family: &str, text: &str, arity: usize) -> Result<Vec<usize>, FamilyError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != arity {
        return Err(FamilyError::InvalidSpec(format!(
            "'{family}:{text}': {family} needs {arity} comma-separated parameter(s), found {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| FamilyError::InvalidSpec(format!("bad parameter token '{tok}'")))
        })
        .collect()
}

impl FromStr for AlgebraSpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let s = s.trim();
        let (family, params) = s
            .split_once(':')
            .ok_or_else(|| FamilyError::InvalidSpec(format!("'{s}': expected family:params")))?;
        let spec = match family {
            "sl" => AlgebraSpec::SlClassical { n: parse_params(family, params, 1)?[0] },
            "so-odd" => AlgebraSpec::SoOddClassical { n: parse_params(family, params, 1)?[0] },
            "sp" => AlgebraSpec::SpClassical { n: parse_params(family, params, 1)?[0] },
            "so-even" => AlgebraSpec::SoEvenClassical { n: parse_params(family, params, 1)?[0] },
            "zz-sl" => {
                let v = parse_params(family, params, 4)?;
                AlgebraSpec::ZzSl { p: v[0], q: v[1], r: v[2], s: v[3] }
            }
            "zz-so-pqrs" => {
                let v = parse_params(family, params, 4)?;
                AlgebraSpec::ZzSoPqrs { p: v[0], q: v[1], r: v[2], s: v[3] }
            }
            "zz-so-odd" => {
                let v = parse_params(family, params, 2)?;
                AlgebraSpec::ZzSoOdd { n: v[0], p: v[1] }
            }
            "zz-so-odd-b" => {
                let v = parse_params(family, params, 2)?;
                AlgebraSpec::ZzSoOddVariant { n: v[0], p: v[1] }
            }
            "zz-sp" => {
                let v = parse_params(family, params, 2)?;
                AlgebraSpec::ZzSp { n: v[0], p: v[1] }
            }
            "zz-so-even" => {
                let v = parse_params(family, params, 2)?;
                AlgebraSpec::ZzSoEven { n: v[0], p: v[1] }
            }
            other => {
                return Err(FamilyError::InvalidSpec(format!("unknown family '{other}'")));
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// How one block cell of a family matrix is constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellRule {
    /// Every entry is a free parameter.
    Free,
    /// Square block constrained to equal its own transpose.
    Symmetric,
    /// Square block constrained to the negative of its own transpose.
    Antisymmetric,
    /// Dependent cell: (sign) × transpose of the named source cell.
    TransposeOf { row: usize, col: usize, negate: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellSpec {
    pub degree: Degree,
    pub rule: CellRule,
}

/// Degrees and constraints for every block cell of a family, plus the
/// global trace constraint where the family needs one.
#[derive(Debug, Clone)]
pub struct GradingMask {
    pub block_rows: Vec<usize>,
    pub block_cols: Vec<usize>,
    /// cells[i][j] for block-row i, block-col j.
    pub cells: Vec<Vec<CellSpec>>,
    pub traceless: bool,
}

impl GradingMask {
    pub fn ambient_size(&self) -> usize {
        self.block_rows.iter().sum()
    }

    fn row_offset(&self, bi: usize) -> usize {
        self.block_rows[..bi].iter().sum()
    }

    fn col_offset(&self, bj: usize) -> usize {
        self.block_cols[..bj].iter().sum()
    }

    /// Cells pointing at (bi, bj) through a transpose dependence.
    fn dependents_of(&self, bi: usize, bj: usize) -> Vec<(usize, usize, bool)> {
        let mut out = Vec::new();
        for (di, row) in self.cells.iter().enumerate() {
            for (dj, cell) in row.iter().enumerate() {
                if let CellRule::TransposeOf { row, col, negate } = cell.rule {
                    if row == bi && col == bj {
                        out.push((di, dj, negate));
                    }
                }
            }
        }
        out
    }
}

fn cell<S: Scalar>(m: &Matrix<S>, mask: &GradingMask, bi: usize, bj: usize) -> Matrix<S> {
    let r0 = mask.row_offset(bi);
    let c0 = mask.col_offset(bj);
    Matrix::from_fn(mask.block_rows[bi], mask.block_cols[bj], |r, c| m.at(r0 + r, c0 + c).clone())
}

struct MaskBuilder {
    sizes: Vec<usize>,
    cells: Vec<Vec<CellSpec>>,
    traceless: bool,
}

impl MaskBuilder {
    fn new(sizes: Vec<usize>) -> Self {
        let k = sizes.len();
        let free00 = CellSpec { degree: Degree::D00, rule: CellRule::Free };
        Self { sizes, cells: vec![vec![free00; k]; k], traceless: false }
    }

    fn set(&mut self, i: usize, j: usize, degree: Degree, rule: CellRule) {
        self.cells[i][j] = CellSpec { degree, rule };
    }

    fn dep(&mut self, i: usize, j: usize, degree: Degree, src: (usize, usize), negate: bool) {
        self.set(i, j, degree, CellRule::TransposeOf { row: src.0, col: src.1, negate });
    }

    fn build(self) -> GradingMask {
        GradingMask {
            block_rows: self.sizes.clone(),
            block_cols: self.sizes,
            cells: self.cells,
            traceless: self.traceless,
        }
    }
}

const BLOCK_DEGREES: [Degree; 4] = [Degree::D00, Degree::D01, Degree::D10, Degree::D11];

/// The grading mask of a family, straight from its block form.
pub fn grading_mask(spec: &AlgebraSpec) -> Result<GradingMask, FamilyError> {
    spec.validate()?;
    let d00 = Degree::D00;
    let d01 = Degree::D01;
    let d10 = Degree::D10;
    let d11 = Degree::D11;
    let mask = match *spec {
        AlgebraSpec::SlClassical { n } => {
            let mut b = MaskBuilder::new(vec![n + 1]);
            b.traceless = true;
            b.build()
        }
        AlgebraSpec::SoOddClassical { n } => {
            let mut b = MaskBuilder::new(vec![n, n, 1]);
            b.set(0, 0, d00, CellRule::Free);
            b.set(0, 1, d00, CellRule::Antisymmetric);
            b.set(0, 2, d00, CellRule::Free);
            b.set(1, 0, d00, CellRule::Antisymmetric);
            b.dep(1, 1, d00, (0, 0), true);
            b.set(1, 2, d00, CellRule::Free);
            b.dep(2, 0, d00, (1, 2), true);
            b.dep(2, 1, d00, (0, 2), true);
            b.set(2, 2, d00, CellRule::Antisymmetric);
            b.build()
        }
        AlgebraSpec::SpClassical { n } | AlgebraSpec::SoEvenClassical { n } => {
            let offdiag = if matches!(spec, AlgebraSpec::SpClassical { .. }) {
                CellRule::Symmetric
            } else {
                CellRule::Antisymmetric
            };
            let mut b = MaskBuilder::new(vec![n, n]);
            b.set(0, 0, d00, CellRule::Free);
            b.set(0, 1, d00, offdiag);
            b.set(1, 0, d00, offdiag);
            b.dep(1, 1, d00, (0, 0), true);
            b.build()
        }
        AlgebraSpec::ZzSl { p, q, r, s } => {
            let mut b = MaskBuilder::new(vec![p, q, r, s]);
            for i in 0..4 {
                for j in 0..4 {
                    b.set(i, j, BLOCK_DEGREES[i].add(BLOCK_DEGREES[j]), CellRule::Free);
                }
            }
            b.traceless = true;
            b.build()
        }
        AlgebraSpec::ZzSoPqrs { p, q, r, s } => {
            // mirror sign is -(-1)^(pairing of the two block degrees);
            // diagonal blocks antisymmetric
            let mut b = MaskBuilder::new(vec![p, q, r, s]);
            for i in 0..4 {
                b.set(i, i, d00, CellRule::Antisymmetric);
                for j in (i + 1)..4 {
                    let degree = BLOCK_DEGREES[i].add(BLOCK_DEGREES[j]);
                    b.set(i, j, degree, CellRule::Free);
                    let negate = BLOCK_DEGREES[j].pairing(BLOCK_DEGREES[i]) == 0;
                    b.dep(j, i, degree, (i, j), negate);
                }
            }
            b.build()
        }
        AlgebraSpec::ZzSoOdd { n, p } => {
            let m = n - p;
            let mut b = MaskBuilder::new(vec![p, m, p, m, 1]);
            b.set(0, 0, d00, CellRule::Free);
            b.set(0, 1, d11, CellRule::Free);
            b.set(0, 2, d00, CellRule::Antisymmetric);
            b.set(0, 3, d11, CellRule::Free);
            b.set(0, 4, d01, CellRule::Free);
            b.set(1, 0, d11, CellRule::Free);
            b.set(1, 1, d00, CellRule::Free);
            b.dep(1, 2, d11, (0, 3), false);
            b.set(1, 3, d00, CellRule::Antisymmetric);
            b.set(1, 4, d10, CellRule::Free);
            b.set(2, 0, d00, CellRule::Antisymmetric);
            b.set(2, 1, d11, CellRule::Free);
            b.dep(2, 2, d00, (0, 0), true);
            b.dep(2, 3, d11, (1, 0), false);
            b.set(2, 4, d01, CellRule::Free);
            b.dep(3, 0, d11, (2, 1), false);
            b.set(3, 1, d00, CellRule::Antisymmetric);
            b.dep(3, 2, d11, (0, 1), false);
            b.dep(3, 3, d00, (1, 1), true);
            b.set(3, 4, d10, CellRule::Free);
            b.dep(4, 0, d01, (2, 4), true);
            b.dep(4, 1, d10, (3, 4), true);
            b.dep(4, 2, d01, (0, 4), true);
            b.dep(4, 3, d10, (1, 4), true);
            b.set(4, 4, d00, CellRule::Antisymmetric);
            b.build()
        }
        AlgebraSpec::ZzSoOddVariant { n, p } => {
            let m = n - p;
            let mut b = MaskBuilder::new(vec![p, m, p, m, 1]);
            b.set(0, 0, d00, CellRule::Free);
            b.set(0, 1, d11, CellRule::Free);
            b.set(0, 2, d00, CellRule::Antisymmetric);
            b.set(0, 3, d11, CellRule::Free);
            b.set(0, 4, d01, CellRule::Free);
            b.set(1, 0, d11, CellRule::Free);
            b.set(1, 1, d00, CellRule::Free);
            b.dep(1, 2, d11, (0, 3), true);
            b.set(1, 3, d00, CellRule::Antisymmetric);
            b.set(1, 4, d10, CellRule::Free);
            b.set(2, 0, d00, CellRule::Antisymmetric);
            b.set(2, 1, d11, CellRule::Free);
            b.dep(2, 2, d00, (0, 0), true);
            b.dep(2, 3, d11, (1, 0), true);
            b.set(2, 4, d01, CellRule::Free);
            b.dep(3, 0, d11, (2, 1), true);
            b.set(3, 1, d00, CellRule::Antisymmetric);
            b.dep(3, 2, d11, (0, 1), true);
            b.dep(3, 3, d00, (1, 1), true);
            b.set(3, 4, d10, CellRule::Free);
            b.dep(4, 0, d01, (2, 4), true);
            b.dep(4, 1, d10, (3, 4), false);
            b.dep(4, 2, d01, (0, 4), true);
            b.dep(4, 3, d10, (1, 4), false);
            b.set(4, 4, d00, CellRule::Antisymmetric);
            b.build()
        }
        AlgebraSpec::ZzSp { n, p } | AlgebraSpec::ZzSoEven { n, p } => {
            let is_sp = matches!(spec, AlgebraSpec::ZzSp { .. });
            let m = n - p;
            let mut b = MaskBuilder::new(vec![p, m, p, m]);
            let self_rule = if is_sp { CellRule::Symmetric } else { CellRule::Antisymmetric };
            // the b/c off-diagonal mirrors flip sign between the two families
            let cross_negate = is_sp;
            b.set(0, 0, d00, CellRule::Free);
            b.set(0, 1, d10, CellRule::Free);
            b.set(0, 2, d11, self_rule);
            b.set(0, 3, d01, CellRule::Free);
            b.set(1, 0, d10, CellRule::Free);
            b.set(1, 1, d00, CellRule::Free);
            b.dep(1, 2, d01, (0, 3), cross_negate);
            b.set(1, 3, d11, self_rule);
            b.set(2, 0, d11, self_rule);
            b.set(2, 1, d01, CellRule::Free);
            b.dep(2, 2, d00, (0, 0), true);
            b.dep(2, 3, d10, (1, 0), true);
            b.dep(3, 0, d01, (2, 1), cross_negate);
            b.set(3, 1, d11, self_rule);
            b.dep(3, 2, d10, (0, 1), true);
            b.dep(3, 3, d00, (1, 1), true);
            b.build()
        }
    };
    Ok(mask)
}

fn place_with_mirrors<S: Scalar>(
    mask: &GradingMask,
    bi: usize,
    bj: usize,
    content: &Matrix<S>,
) -> Matrix<S> {
    let n = mask.ambient_size();
    let mut out = Matrix::zero(n, n);
    let r0 = mask.row_offset(bi);
    let c0 = mask.col_offset(bj);
    for r in 0..content.rows() {
        for c in 0..content.cols() {
            let v = content.at(r, c);
            if !v.is_zero() {
                out.set(r0 + r, c0 + c, v.clone());
            }
        }
    }
    for (di, dj, negate) in mask.dependents_of(bi, bj) {
        let t = if negate { content.transpose().neg() } else { content.transpose() };
        let tr0 = mask.row_offset(di);
        let tc0 = mask.col_offset(dj);
        for r in 0..t.rows() {
            for c in 0..t.cols() {
                let v = t.at(r, c);
                if !v.is_zero() {
                    out.set(tr0 + r, tc0 + c, v.clone());
                }
            }
        }
    }
    out
}

/// Explicit homogeneous basis of the family: one element per free
/// parameter of the block form, with dependent cells filled in.
/// Conventions: matrix units for free cells, e_jk − e_kj for
/// antisymmetric blocks, e_jk + e_kj and e_jj for symmetric blocks, and
/// e_jj − e_(j+1)(j+1) spanning the traceless diagonal of the sl forms.
pub fn build<S: Scalar>(spec: &AlgebraSpec) -> Result<(GradedBasis<S>, GradingMask), FamilyError> {
    let mask = grading_mask(spec)?;
    let n = mask.ambient_size();
    let mut elements: Vec<HomogeneousElement<S>> = Vec::new();
    let push = |elements: &mut Vec<HomogeneousElement<S>>, m: Matrix<S>, d: Degree| {
        elements.push(HomogeneousElement::new(m, d));
    };
    for bi in 0..mask.block_rows.len() {
        for bj in 0..mask.block_cols.len() {
            let (h, w) = (mask.block_rows[bi], mask.block_cols[bj]);
            if h == 0 || w == 0 {
                continue;
            }
            let spec_cell = mask.cells[bi][bj];
            let r0 = mask.row_offset(bi);
            let c0 = mask.col_offset(bj);
            match spec_cell.rule {
                CellRule::Free => {
                    for r in 0..h {
                        for c in 0..w {
                            if mask.traceless && r0 + r == c0 + c {
                                continue; // diagonal handled by the traceless span below
                            }
                            let mut content = Matrix::zero(h, w);
                            content.set(r, c, S::one());
                            push(
                                &mut elements,
                                place_with_mirrors(&mask, bi, bj, &content),
                                spec_cell.degree,
                            );
                        }
                    }
                }
                CellRule::Symmetric => {
                    for r in 0..h {
                        for c in r..w {
                            let mut content = Matrix::zero(h, w);
                            content.set(r, c, S::one());
                            if c != r {
                                content.set(c, r, S::one());
                            }
                            push(
                                &mut elements,
                                place_with_mirrors(&mask, bi, bj, &content),
                                spec_cell.degree,
                            );
                        }
                    }
                }
                CellRule::Antisymmetric => {
                    for r in 0..h {
                        for c in (r + 1)..w {
                            let mut content = Matrix::zero(h, w);
                            content.set(r, c, S::one());
                            content.set(c, r, -S::one());
                            push(
                                &mut elements,
                                place_with_mirrors(&mask, bi, bj, &content),
                                spec_cell.degree,
                            );
                        }
                    }
                }
                CellRule::TransposeOf { .. } => {}
            }
        }
    }
    if mask.traceless {
        for j in 0..(n - 1) {
            let mut m = Matrix::zero(n, n);
            m.set(j, j, S::one());
            m.set(j + 1, j + 1, -S::one());
            push(&mut elements, m, Degree::D00);
        }
    }
    let labels = (0..elements.len()).map(|k| format!("x{k}")).collect();
    let basis = GradedBasis::new(n, elements, labels)?;
    Ok((basis, mask))
}

/// Closed-form per-degree dimensions, exactly the printed lists.
pub fn dims_formula(spec: &AlgebraSpec) -> Result<BTreeMap<Degree, usize>, FamilyError> {
    spec.validate()?;
    let mut out = BTreeMap::new();
    let put = |out: &mut BTreeMap<Degree, usize>, dims: [usize; 4]| {
        for (d, v) in Degree::ALL.iter().zip(dims) {
            out.insert(*d, v);
        }
    };
    match *spec {
        AlgebraSpec::SlClassical { n } => put(&mut out, [n * n + 2 * n, 0, 0, 0]),
        AlgebraSpec::SoOddClassical { n } | AlgebraSpec::SpClassical { n } => {
            put(&mut out, [2 * n * n + n, 0, 0, 0]);
        }
        AlgebraSpec::SoEvenClassical { n } => put(&mut out, [2 * n * n - n, 0, 0, 0]),
        AlgebraSpec::ZzSl { p, q, r, s } => put(
            &mut out,
            [
                p * p + q * q + r * r + s * s - 1,
                2 * p * q + 2 * r * s,
                2 * p * r + 2 * q * s,
                2 * q * r + 2 * p * s,
            ],
        ),
        AlgebraSpec::ZzSoPqrs { p, q, r, s } => {
            let pairs = |t: usize| t * t.saturating_sub(1) / 2;
            put(
                &mut out,
                [
                    pairs(p) + pairs(q) + pairs(r) + pairs(s),
                    p * q + r * s,
                    p * r + q * s,
                    q * r + p * s,
                ],
            );
        }
        AlgebraSpec::ZzSoOdd { n, p } | AlgebraSpec::ZzSoOddVariant { n, p } => put(
            &mut out,
            [2 * n * n - n - 4 * p * (n - p), 2 * p, 2 * (n - p), 4 * p * (n - p)],
        ),
        AlgebraSpec::ZzSp { n, p } => {
            let m = n - p;
            put(
                &mut out,
                [p * p + m * m, 2 * p * m, 2 * p * m, p * (p + 1) + m * (m + 1)],
            );
        }
        AlgebraSpec::ZzSoEven { n, p } => {
            let m = n - p;
            put(
                &mut out,
                [p * p + m * m, 2 * p * m, 2 * p * m, p * (p - 1) + m * (m - 1)],
            );
        }
    }
    Ok(out)
}

/// Splits a matrix into its four degree components by zeroing the cells
/// of the other degrees. Rejects non-members, naming the first violated
/// constraint in row-major cell order.
pub fn decompose<S: Scalar>(
    mask: &GradingMask,
    m: &Matrix<S>,
) -> Result<BTreeMap<Degree, Matrix<S>>, FamilyError> {
    let n = mask.ambient_size();
    if !m.is_square() || m.rows() != n {
        return Err(MatrixError::ShapeMismatch(format!(
            "expected {n}x{n}, got {}x{}",
            m.rows(),
            m.cols()
        ))
        .into());
    }
    for bi in 0..mask.block_rows.len() {
        for bj in 0..mask.block_cols.len() {
            if mask.block_rows[bi] == 0 || mask.block_cols[bj] == 0 {
                continue;
            }
            let content = cell(m, mask, bi, bj);
            match mask.cells[bi][bj].rule {
                CellRule::Free => {}
                CellRule::Symmetric => {
                    if content != content.transpose() {
                        return Err(FamilyError::NotMember(format!(
                            "cell ({bi},{bj}) must be symmetric"
                        )));
                    }
                }
                CellRule::Antisymmetric => {
                    if content != content.transpose().neg() {
                        return Err(FamilyError::NotMember(format!(
                            "cell ({bi},{bj}) must be antisymmetric"
                        )));
                    }
                }
                CellRule::TransposeOf { row, col, negate } => {
                    let src = cell(m, mask, row, col);
                    let expected = if negate { src.transpose().neg() } else { src.transpose() };
                    if content != expected {
                        return Err(FamilyError::NotMember(format!(
                            "cell ({bi},{bj}) must be {}transpose of cell ({row},{col})",
                            if negate { "minus the " } else { "the " }
                        )));
                    }
                }
            }
        }
    }
    if mask.traceless && !m.trace()?.is_zero() {
        return Err(FamilyError::NotMember("matrix must be traceless".into()));
    }
    let mut out = BTreeMap::new();
    for d in Degree::ALL {
        let mut comp = Matrix::zero(n, n);
        for bi in 0..mask.block_rows.len() {
            for bj in 0..mask.block_cols.len() {
                if mask.cells[bi][bj].degree != d {
                    continue;
                }
                let r0 = mask.row_offset(bi);
                let c0 = mask.col_offset(bj);
                for r in 0..mask.block_rows[bi] {
                    for c in 0..mask.block_cols[bj] {
                        let v = m.at(r0 + r, c0 + c);
                        if !v.is_zero() {
                            comp.set(r0 + r, c0 + c, v.clone());
                        }
                    }
                }
            }
        }
        out.insert(d, comp);
    }
    Ok(out)
}

fn compositions_of(total: usize) -> Vec<(usize, usize, usize, usize)> {
    // descending lexicographic, so e.g. (1,1,1,0) precedes (0,1,1,1)
    let mut out = Vec::new();
    for p in (0..=total).rev() {
        for q in (0..=total - p).rev() {
            for r in (0..=total - p - q).rev() {
                out.push((p, q, r, total - p - q - r));
            }
        }
    }
    out
}

/// Every valid family spec with the given ambient matrix size, in a
/// fixed enumeration order (graded families first).
pub fn all_specs_with_ambient(ambient: usize) -> Vec<AlgebraSpec> {
    let mut out = Vec::new();
    for (p, q, r, s) in compositions_of(ambient) {
        out.push(AlgebraSpec::ZzSl { p, q, r, s });
    }
    for (p, q, r, s) in compositions_of(ambient) {
        out.push(AlgebraSpec::ZzSoPqrs { p, q, r, s });
    }
    if ambient % 2 == 1 && ambient >= 5 {
        let n = (ambient - 1) / 2;
        for p in 1..n {
            out.push(AlgebraSpec::ZzSoOdd { n, p });
        }
        for p in 1..n {
            out.push(AlgebraSpec::ZzSoOddVariant { n, p });
        }
    }
    if ambient % 2 == 0 && ambient >= 4 {
        let n = ambient / 2;
        for p in 1..n {
            out.push(AlgebraSpec::ZzSp { n, p });
        }
        for p in 1..n {
            out.push(AlgebraSpec::ZzSoEven { n, p });
        }
    }
    if ambient >= 2 {
        out.push(AlgebraSpec::SlClassical { n: ambient - 1 });
    }
    if ambient % 2 == 1 && ambient >= 3 {
        out.push(AlgebraSpec::SoOddClassical { n: (ambient - 1) / 2 });
    }
    if ambient % 2 == 0 && ambient >= 2 {
        out.push(AlgebraSpec::SpClassical { n: ambient / 2 });
        out.push(AlgebraSpec::SoEvenClassical { n: ambient / 2 });
    }
    out.retain(|spec| spec.validate().is_ok());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{check_closure, check_jacobi, generate};
    use crate::scalar::{FieldElem, Rational};

    fn dims_of(spec: &AlgebraSpec) -> [usize; 4] {
        let (basis, _) = build::<FieldElem>(spec).unwrap();
        basis.signature()
    }

    #[test]
    fn spec_parsing_roundtrip() {
        for text in [
            "zz-sl:1,1,1,0",
            "zz-so-pqrs:1,1,1,1",
            "zz-so-odd:2,1",
            "zz-so-odd-b:3,2",
            "zz-sp:3,1",
            "zz-so-even:2,1",
            "sl:2",
            "so-odd:2",
            "sp:3",
            "so-even:4",
        ] {
            let spec: AlgebraSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("zz-sl:1,1,1".parse::<AlgebraSpec>().is_err());
        assert!("zz-slx:1,1,1,0".parse::<AlgebraSpec>().is_err());
        assert!("zz-so-odd:2,2".parse::<AlgebraSpec>().is_err());
        assert!("zz-sp:2,0".parse::<AlgebraSpec>().is_err());
        assert!("sl:x".parse::<AlgebraSpec>().is_err());
    }

    #[test]
    fn build_examples_from_dimension_lists() {
        assert_eq!(dims_of(&AlgebraSpec::ZzSl { p: 1, q: 1, r: 1, s: 0 }), [2, 2, 2, 2]);
        assert_eq!(dims_of(&AlgebraSpec::ZzSoEven { n: 2, p: 1 }), [2, 2, 2, 0]);
        assert_eq!(dims_of(&AlgebraSpec::ZzSoOdd { n: 2, p: 1 }), [2, 2, 2, 4]);
    }

    #[test]
    fn dims_formula_examples() {
        let f = dims_formula(&AlgebraSpec::ZzSp { n: 2, p: 1 }).unwrap();
        assert_eq!(
            Degree::ALL.map(|d| f[&d]),
            [2, 2, 2, 4],
        );
        let f = dims_formula(&AlgebraSpec::ZzSl { p: 2, q: 1, r: 1, s: 0 }).unwrap();
        assert_eq!(Degree::ALL.map(|d| f[&d]), [5, 4, 4, 2]);
        assert_eq!(f.values().sum::<usize>(), 15);
        let f = dims_formula(&AlgebraSpec::ZzSoPqrs { p: 1, q: 1, r: 1, s: 1 }).unwrap();
        assert_eq!(Degree::ALL.map(|d| f[&d]), [0, 2, 2, 2]);
    }

    #[test]
    fn built_dims_match_formula_on_small_grid() {
        let mut specs = vec![];
        for total in 2..=5 {
            for (p, q, r, s) in compositions_of(total) {
                specs.push(AlgebraSpec::ZzSl { p, q, r, s });
                specs.push(AlgebraSpec::ZzSoPqrs { p, q, r, s });
            }
        }
        for n in 2..=4 {
            for p in 1..n {
                specs.push(AlgebraSpec::ZzSoOdd { n, p });
                specs.push(AlgebraSpec::ZzSoOddVariant { n, p });
                specs.push(AlgebraSpec::ZzSp { n, p });
                specs.push(AlgebraSpec::ZzSoEven { n, p });
            }
        }
        for n in 1..=4 {
            specs.push(AlgebraSpec::SlClassical { n });
            specs.push(AlgebraSpec::SoOddClassical { n });
            specs.push(AlgebraSpec::SpClassical { n });
            specs.push(AlgebraSpec::SoEvenClassical { n });
        }
        for spec in specs {
            if spec.validate().is_err() {
                continue;
            }
            let formula = dims_formula(&spec).unwrap();
            let built = dims_of(&spec);
            assert_eq!(built, Degree::ALL.map(|d| formula[&d]), "{spec}");
        }
    }

    #[test]
    fn graded_families_close_and_satisfy_jacobi_spot_checks() {
        for spec in [
            AlgebraSpec::ZzSl { p: 1, q: 1, r: 1, s: 0 },
            AlgebraSpec::ZzSoPqrs { p: 1, q: 1, r: 1, s: 1 },
            AlgebraSpec::ZzSoOdd { n: 2, p: 1 },
            AlgebraSpec::ZzSoOddVariant { n: 2, p: 1 },
            AlgebraSpec::ZzSp { n: 2, p: 1 },
            AlgebraSpec::ZzSoEven { n: 2, p: 1 },
            AlgebraSpec::SoOddClassical { n: 2 },
        ] {
            let (basis, _) = build::<FieldElem>(&spec).unwrap();
            assert!(check_closure(&basis).passed, "{spec} closure");
            assert!(check_jacobi(&basis).passed, "{spec} jacobi");
        }
    }

    #[test]
    fn families_are_scalar_generic() {
        // the family matrices are rational, so plain rationals work too
        let (basis, _) = build::<Rational>(&AlgebraSpec::ZzSp { n: 2, p: 1 }).unwrap();
        assert!(check_jacobi(&basis).passed);
    }

    #[test]
    fn generation_reaches_full_family() {
        for spec in [
            AlgebraSpec::ZzSl { p: 2, q: 1, r: 1, s: 0 },
            AlgebraSpec::ZzSoOdd { n: 3, p: 1 },
            AlgebraSpec::ZzSp { n: 2, p: 1 },
        ] {
            let (basis, _) = build::<FieldElem>(&spec).unwrap();
            let g10 = basis.component_matrices(Degree::D10);
            let g01 = basis.component_matrices(Degree::D01);
            let gen = generate(&g10, &g01).unwrap();
            assert!(gen.rounds <= 1, "{spec} needed {} rounds", gen.rounds);
            for d in Degree::ALL {
                assert!(
                    gen.basis.span_of_degree(d).equal(&basis.span_of_degree(d)).unwrap(),
                    "{spec} degree {d}"
                );
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let mask = grading_mask(&AlgebraSpec::ZzSl { p: 1, q: 1, r: 1, s: 0 }).unwrap();
        let zero = Matrix::<FieldElem>::zero(3, 3);
        let comps = decompose(&mask, &zero).unwrap();
        assert!(comps.values().all(Matrix::is_zero));

        // lambda_6 sits entirely in the (1,1) component
        let l6: Matrix<FieldElem> = Matrix::elementary(3, 3, 2, 3)
            .unwrap()
            .add(&Matrix::elementary(3, 3, 3, 2).unwrap())
            .unwrap();
        let comps = decompose(&mask, &l6).unwrap();
        assert_eq!(comps[&Degree::D11], l6);
        assert!(comps[&Degree::D00].is_zero());
        assert!(comps[&Degree::D01].is_zero());
        assert!(comps[&Degree::D10].is_zero());

        // a symmetric 1x1 b-block where so_p(2n) demands antisymmetric
        let mask = grading_mask(&AlgebraSpec::ZzSoEven { n: 2, p: 1 }).unwrap();
        let bad = Matrix::<FieldElem>::elementary(4, 4, 1, 3).unwrap();
        match decompose(&mask, &bad) {
            Err(FamilyError::NotMember(msg)) => assert!(msg.contains("antisymmetric"), "{msg}"),
            other => panic!("expected NotMember, got {other:?}"),
        }

        // non-traceless matrix rejected by the sl mask
        let mask = grading_mask(&AlgebraSpec::ZzSl { p: 1, q: 1, r: 1, s: 0 }).unwrap();
        let id = Matrix::<FieldElem>::identity(3);
        assert!(matches!(decompose(&mask, &id), Err(FamilyError::NotMember(_))));
    }

    #[test]
    fn classical_graded_dimension_correspondence() {
        for n in 2..=4 {
            for p in 1..n {
                let odd: usize =
                    dims_of(&AlgebraSpec::ZzSoOdd { n, p }).iter().sum();
                assert_eq!(odd, 2 * n * n + n);
                let sp: usize = dims_of(&AlgebraSpec::ZzSp { n, p }).iter().sum();
                assert_eq!(sp, 2 * n * n + n);
                let even: usize = dims_of(&AlgebraSpec::ZzSoEven { n, p }).iter().sum();
                assert_eq!(even, 2 * n * n - n);
            }
        }
    }

    #[test]
    fn spec_enumeration_order_prefers_descending_compositions() {
        let specs = all_specs_with_ambient(3);
        let first_match = specs
            .iter()
            .find(|spec| {
                dims_formula(spec).map(|f| Degree::ALL.map(|d| f[&d]) == [2, 2, 2, 2]).unwrap_or(false)
            })
            .unwrap();
        assert_eq!(first_match, &AlgebraSpec::ZzSl { p: 1, q: 1, r: 1, s: 0 });
    }
}
