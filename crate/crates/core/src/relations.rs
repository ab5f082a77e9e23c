//! Parastatistics examples as executable checks: the Gell-Mann matrices
//! with their anticommutator table, two-sort parafermion generators with
//! their triple relations, and A-statistics generators with theirs,
//! including span identification of the generated algebras against the
//! graded families.


use crate::families::{build, decompose, grading_mask, AlgebraSpec, FamilyError};
use crate::graded::{check_closure, check_jacobi, generate, Degree, GradedBasis, HomogeneousElement};
use crate::matrix::{anticommutator, commutator, Matrix, SpanBasis};
use crate::report::Report;
use crate::scalar::FieldElem;

type Mat = Matrix<FieldElem>;

fn e(n: usize, j: usize, k: usize) -> Mat {
    Matrix::elementary(n, n, j, k).expect("indices in range")
}

/// The eight Gell-Mann matrices with their degree assignment. The eighth
/// matrix is stored rescaled by √3 (diag(1,1,−2)), which spans the same
/// line; 1/√3 lies outside Q(i,√2) and none of the checked identities
/// involves the eighth matrix.
pub struct GellMannSet {
    pub lambdas: Vec<Mat>,
    pub degree_of: Vec<Degree>,
}

impl Default for GellMannSet {
    fn default() -> Self {
        Self::new()
    }
}

impl GellMannSet {
    pub fn new() -> Self {
        let i = FieldElem::i();
        let lambdas = vec![
            e(3, 1, 2).add(&e(3, 2, 1)).unwrap(),
            e(3, 1, 2).scale(&-i.clone()).add(&e(3, 2, 1).scale(&i)).unwrap(),
            e(3, 1, 1).sub(&e(3, 2, 2)).unwrap(),
            e(3, 1, 3).add(&e(3, 3, 1)).unwrap(),
            e(3, 1, 3).scale(&-i.clone()).add(&e(3, 3, 1).scale(&i)).unwrap(),
            e(3, 2, 3).add(&e(3, 3, 2)).unwrap(),
            e(3, 2, 3).scale(&-i.clone()).add(&e(3, 3, 2).scale(&i)).unwrap(),
            e(3, 1, 1)
                .add(&e(3, 2, 2))
                .unwrap()
                .sub(&e(3, 3, 3).scale(&FieldElem::from_int(2)))
                .unwrap(),
        ];
        let degree_of = vec![
            Degree::D01,
            Degree::D01,
            Degree::D00,
            Degree::D10,
            Degree::D10,
            Degree::D11,
            Degree::D11,
            Degree::D00,
        ];
        Self { lambdas, degree_of }
    }

    pub fn graded_basis(&self) -> GradedBasis<FieldElem> {
        let elements = self
            .lambdas
            .iter()
            .zip(&self.degree_of)
            .map(|(m, &d)| HomogeneousElement::new(m.clone(), d))
            .collect();
        let labels = (1..=8)
            .map(|k| if k == 8 { "sqrt3_l8".to_owned() } else { format!("l{k}") })
            .collect();
        GradedBasis::new(3, elements, labels).expect("gell-mann matrices are independent")
    }
}

/// The twelve anticommutator identities, as (a, b, coefficient, c) for
/// {λa, λb} = coefficient·λc.
const GELL_MANN_TABLE: [(usize, usize, i64, usize); 12] = [
    (1, 4, 1, 6),
    (1, 5, 1, 7),
    (2, 4, -1, 7),
    (2, 5, 1, 6),
    (1, 6, 1, 4),
    (1, 7, 1, 5),
    (2, 6, 1, 5),
    (2, 7, -1, 4),
    (4, 6, 1, 1),
    (4, 7, -1, 2),
    (5, 6, 1, 2),
    (5, 7, 1, 1),
];

fn check_spans_match(
    report: &mut Report,
    id_prefix: &str,
    got: &[(&str, SpanBasis<FieldElem>)],
    family: &GradedBasis<FieldElem>,
) {
    for (name, span) in got {
        let d = match *name {
            "(0,0)" => Degree::D00,
            "(0,1)" => Degree::D01,
            "(1,0)" => Degree::D10,
            _ => Degree::D11,
        };
        let family_span = family.span_of_degree(d);
        match span.equal(&family_span) {
            Ok(true) => report.pass(format!("{id_prefix}-span"), format!("degree={name}")),
            Ok(false) => report.fail(
                format!("{id_prefix}-span"),
                format!("degree={name}"),
                Some(format!("rank {} vs family rank {}", span.rank(), family_span.rank())),
            ),
            Err(err) => report.fail(
                format!("{id_prefix}-span"),
                format!("degree={name}"),
                Some(err.to_string()),
            ),
        }
    }
}

/// Verifies the printed anticommutator table, membership and degrees
/// under the graded sl mask with (p,q,r,s) = (1,1,1,0), closure, Jacobi,
/// and the per-degree spans against the built family.
pub fn check_gell_mann_table() -> Report {
    let mut report = Report::new("gell-mann");
    report.note(
        "the eighth matrix is stored rescaled by sqrt(3) as diag(1,1,-2); \
         1/sqrt(3) is outside Q(i,sqrt(2)) and the rescaling spans the same line",
    );
    let set = GellMannSet::new();

    for &(a, b, coeff, c) in &GELL_MANN_TABLE {
        let got = anticommutator(&set.lambdas[a - 1], &set.lambdas[b - 1]).unwrap();
        let expected = set.lambdas[c - 1].scale(&FieldElem::from_int(coeff));
        let indices = format!("{{l{a},l{b}}}={}l{c}", if coeff == 1 { "" } else { "-" });
        if got == expected {
            report.pass("anticommutator-table", indices);
        } else {
            report.fail(
                "anticommutator-table",
                indices,
                Some(got.sub(&expected).unwrap().to_string()),
            );
        }
        // every listed pair takes the anticommutator branch
        let pa = set.degree_of[a - 1];
        let pb = set.degree_of[b - 1];
        if pa.pairing(pb) != 1 {
            report.fail(
                "anticommutator-branch",
                format!("l{a},l{b}"),
                Some("pairing is 0, commutator branch".into()),
            );
        }
    }

    // each matrix is a member of the mask with exactly its assigned component
    let mask = grading_mask(&AlgebraSpec::ZzSl { p: 1, q: 1, r: 1, s: 0 }).unwrap();
    for (k, (m, &d)) in set.lambdas.iter().zip(&set.degree_of).enumerate() {
        match decompose(&mask, m) {
            Ok(comps) => {
                let ok = comps
                    .iter()
                    .all(|(cd, comp)| if *cd == d { comp == m } else { comp.is_zero() });
                if ok {
                    report.pass("mask-membership", format!("l{},degree={d}", k + 1));
                } else {
                    report.fail(
                        "mask-membership",
                        format!("l{},degree={d}", k + 1),
                        Some("component split differs from the assignment".into()),
                    );
                }
            }
            Err(err) => {
                report.fail("mask-membership", format!("l{}", k + 1), Some(err.to_string()));
            }
        }
    }

    let basis = set.graded_basis();
    report.absorb(check_closure(&basis));
    report.absorb(check_jacobi(&basis));

    let (family, _) = build::<FieldElem>(&AlgebraSpec::ZzSl { p: 1, q: 1, r: 1, s: 0 }).unwrap();
    let spans: Vec<(&str, SpanBasis<FieldElem>)> = [
        ("(0,0)", Degree::D00),
        ("(0,1)", Degree::D01),
        ("(1,0)", Degree::D10),
        ("(1,1)", Degree::D11),
    ]
    .iter()
    .map(|&(name, d)| (name, basis.span_of_degree(d)))
    .collect();
    check_spans_match(&mut report, "gell-mann", &spans, &family);
    report
}

/// Two sorts of parafermion generators inside the graded so_p(2n+1)
/// matrices, built from the last row and column of the block form:
/// f_j^- = √2(e_{j,2n+1} − e_{2n+1,n+j}), f_j^+ = √2(e_{2n+1,j} − e_{n+j,2n+1}).
pub struct ParafermionSet {
    pub n: usize,
    pub p: usize,
    pub f_minus: Vec<Mat>,
    pub f_plus: Vec<Mat>,
}

impl ParafermionSet {
    pub fn new(n: usize, p: usize) -> Result<Self, FamilyError> {
        AlgebraSpec::ZzSoOdd { n, p }.validate()?;
        let size = 2 * n + 1;
        let r2 = FieldElem::sqrt2();
        let mut f_minus = Vec::with_capacity(n);
        let mut f_plus = Vec::with_capacity(n);
        for j in 1..=n {
            f_minus.push(e(size, j, size).sub(&e(size, size, n + j)).unwrap().scale(&r2));
            f_plus.push(e(size, size, j).sub(&e(size, n + j, size)).unwrap().scale(&r2));
        }
        Ok(Self { n, p, f_minus, f_plus })
    }

    /// f_j^ξ for ξ = ±1.
    pub fn f(&self, j: usize, xi: i64) -> &Mat {
        if xi > 0 {
            &self.f_plus[j - 1]
        } else {
            &self.f_minus[j - 1]
        }
    }

    /// Degree of the generators with index j: (0,1) for j ≤ p, else (1,0).
    pub fn degree(&self, j: usize) -> Degree {
        if j <= self.p {
            Degree::D01
        } else {
            Degree::D10
        }
    }
}

const SIGNS: [i64; 2] = [1, -1];

fn sign_name(s: i64) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

/// ½(ε−η)² as an exact scalar: 0 or 2.
fn half_square_diff(eps: i64, eta: i64) -> FieldElem {
    FieldElem::from_int((eps - eta) * (eps - eta) / 2)
}

/// Verifies the parafermion triple relations: nested commutators within
/// each sort, nested anticommutators across sorts, and the four span
/// identities against the built graded so_p(2n+1).
pub fn check_parafermion(n: usize, p: usize) -> Result<Report, FamilyError> {
    let set = ParafermionSet::new(n, p)?;
    let mut report = Report::new(format!("parafermion n={n} p={p}"));

    // [[f_j^xi, f_k^eta], f_l^eps] = ½(eps−eta)² δ_kl f_j^xi − ½(eps−xi)² δ_jl f_k^eta
    // with j, k, l all in the same sort
    let sorts: [Vec<usize>; 2] = [(1..=p).collect(), (p + 1..=n).collect()];
    for sort in &sorts {
        for &j in sort {
            for &k in sort {
                for &l in sort {
                    for xi in SIGNS {
                        for eta in SIGNS {
                            for eps in SIGNS {
                                let inner = commutator(set.f(j, xi), set.f(k, eta)).unwrap();
                                let lhs = commutator(&inner, set.f(l, eps)).unwrap();
                                let mut rhs = Mat::zero(2 * n + 1, 2 * n + 1);
                                if k == l {
                                    rhs = rhs
                                        .add(&set.f(j, xi).scale(&half_square_diff(eps, eta)))
                                        .unwrap();
                                }
                                if j == l {
                                    rhs = rhs
                                        .sub(&set.f(k, eta).scale(&half_square_diff(eps, xi)))
                                        .unwrap();
                                }
                                let indices = format!(
                                    "j={j},k={k},l={l},xi={},eta={},eps={}",
                                    sign_name(xi),
                                    sign_name(eta),
                                    sign_name(eps)
                                );
                                if lhs == rhs {
                                    report.pass("PF", indices);
                                } else {
                                    report.fail(
                                        "PF",
                                        indices,
                                        Some(lhs.sub(&rhs).unwrap().to_string()),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // {{f_j^xi, f_k^eta}, f_l^eps} = ½(eps−eta)² δ_kl f_j^xi + ½(eps−xi)² δ_jl f_k^eta
    // with j, k in different sorts and l anywhere
    let cross: [(Vec<usize>, Vec<usize>); 2] =
        [((1..=p).collect(), (p + 1..=n).collect()), ((p + 1..=n).collect(), (1..=p).collect())];
    for (js, ks) in &cross {
        for &j in js {
            for &k in ks {
                for l in 1..=n {
                    for xi in SIGNS {
                        for eta in SIGNS {
                            for eps in SIGNS {
                                let inner = anticommutator(set.f(j, xi), set.f(k, eta)).unwrap();
                                let lhs = anticommutator(&inner, set.f(l, eps)).unwrap();
                                let mut rhs = Mat::zero(2 * n + 1, 2 * n + 1);
                                if k == l {
                                    rhs = rhs
                                        .add(&set.f(j, xi).scale(&half_square_diff(eps, eta)))
                                        .unwrap();
                                }
                                if j == l {
                                    rhs = rhs
                                        .add(&set.f(k, eta).scale(&half_square_diff(eps, xi)))
                                        .unwrap();
                                }
                                let indices = format!(
                                    "j={j},k={k},l={l},xi={},eta={},eps={}",
                                    sign_name(xi),
                                    sign_name(eta),
                                    sign_name(eps)
                                );
                                if lhs == rhs {
                                    report.pass("PFrel", indices);
                                } else {
                                    report.fail(
                                        "PFrel",
                                        indices,
                                        Some(lhs.sub(&rhs).unwrap().to_string()),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // span identities: the four components of so_p(2n+1), as printed
    let (family, _) = build::<FieldElem>(&AlgebraSpec::ZzSoOdd { n, p })?;
    let ambient = (2 * n + 1) * (2 * n + 1);
    let g01 =
        SpanBasis::from_matrices(ambient, (1..=p).flat_map(|k| [set.f(k, 1), set.f(k, -1)]))
            .unwrap();
    let g10 =
        SpanBasis::from_matrices(ambient, (p + 1..=n).flat_map(|k| [set.f(k, 1), set.f(k, -1)]))
            .unwrap();
    let mut g00_items = Vec::new();
    for sort in &sorts {
        for &k in sort {
            for &l in sort {
                for xi in SIGNS {
                    for eta in SIGNS {
                        g00_items.push(commutator(set.f(k, xi), set.f(l, eta)).unwrap());
                    }
                }
            }
        }
    }
    let g00 = SpanBasis::from_matrices(ambient, g00_items.iter()).unwrap();
    let mut g11_items = Vec::new();
    for k in 1..=p {
        for l in p + 1..=n {
            for xi in SIGNS {
                for eta in SIGNS {
                    g11_items.push(anticommutator(set.f(k, xi), set.f(l, eta)).unwrap());
                }
            }
        }
    }
    let g11 = SpanBasis::from_matrices(ambient, g11_items.iter()).unwrap();
    check_spans_match(
        &mut report,
        "parafermion",
        &[("(0,0)", g00), ("(0,1)", g01), ("(1,0)", g10), ("(1,1)", g11)],
        &family,
    );

    // the generated algebra reproduces the family component by component
    let g10_gen: Vec<Mat> =
        (p + 1..=n).flat_map(|k| [set.f(k, 1).clone(), set.f(k, -1).clone()]).collect();
    let g01_gen: Vec<Mat> =
        (1..=p).flat_map(|k| [set.f(k, 1).clone(), set.f(k, -1).clone()]).collect();
    match generate(&g10_gen, &g01_gen) {
        Ok(gen) => {
            let spans: Vec<(&str, SpanBasis<FieldElem>)> = [
                ("(0,0)", Degree::D00),
                ("(0,1)", Degree::D01),
                ("(1,0)", Degree::D10),
                ("(1,1)", Degree::D11),
            ]
            .iter()
            .map(|&(name, d)| (name, gen.basis.span_of_degree(d)))
            .collect();
            check_spans_match(&mut report, "parafermion-generate", &spans, &family);
        }
        Err(err) => report.fail("parafermion-generate", "", Some(err.to_string())),
    }
    Ok(report)
}

/// A-statistics generators a_j^- = e_{1,j+1}, a_j^+ = e_{j+1,1} inside
/// the graded sl with (p,q,r,s) = (1, q, n−q, 0).
pub struct AStatSet {
    pub n: usize,
    pub q: usize,
    pub a_minus: Vec<Mat>,
    pub a_plus: Vec<Mat>,
}

impl AStatSet {
    pub fn new(n: usize, q: usize) -> Result<Self, FamilyError> {
        if q < 1 || q >= n {
            return Err(FamilyError::InvalidSpec(format!(
                "a-statistics requires 1 <= q < n, got n={n}, q={q}"
            )));
        }
        let size = n + 1;
        let a_minus = (1..=n).map(|j| e(size, 1, j + 1)).collect();
        let a_plus = (1..=n).map(|j| e(size, j + 1, 1)).collect();
        Ok(Self { n, q, a_minus, a_plus })
    }

    pub fn a(&self, j: usize, xi: i64) -> &Mat {
        if xi > 0 {
            &self.a_plus[j - 1]
        } else {
            &self.a_minus[j - 1]
        }
    }
}

/// Verifies the A-statistics triple relations: nested commutators within
/// each sort, nested anticommutators across sorts, and the span
/// identities against the built graded sl_{1,q,n−q,0}(n+1).
pub fn check_a_statistics(n: usize, q: usize) -> Result<Report, FamilyError> {
    let set = AStatSet::new(n, q)?;
    let mut report = Report::new(format!("a-statistics n={n} q={q}"));
    let size = n + 1;

    let sorts: [Vec<usize>; 2] = [(1..=q).collect(), (q + 1..=n).collect()];
    // within each sort:
    //   [a_j^+, a_k^+] = [a_j^-, a_k^-] = 0
    //   [[a_j^+, a_k^-], a_l^+] = δ_jk a_l^+ + δ_kl a_j^+
    //   [[a_j^+, a_k^-], a_l^-] = −δ_jk a_l^- − δ_jl a_k^-
    for sort in &sorts {
        for &j in sort {
            for &k in sort {
                for xi in SIGNS {
                    let got = commutator(set.a(j, xi), set.a(k, xi)).unwrap();
                    let indices = format!("j={j},k={k},sign={}", sign_name(xi));
                    if got.is_zero() {
                        report.pass("A1R-same-sign", indices);
                    } else {
                        report.fail("A1R-same-sign", indices, Some(got.to_string()));
                    }
                }
                for &l in sort {
                    let inner = commutator(set.a(j, 1), set.a(k, -1)).unwrap();
                    let lhs_plus = commutator(&inner, set.a(l, 1)).unwrap();
                    let mut rhs_plus = Mat::zero(size, size);
                    if j == k {
                        rhs_plus = rhs_plus.add(set.a(l, 1)).unwrap();
                    }
                    if k == l {
                        rhs_plus = rhs_plus.add(set.a(j, 1)).unwrap();
                    }
                    let indices = format!("j={j},k={k},l={l}");
                    if lhs_plus == rhs_plus {
                        report.pass("A1R-plus", indices.clone());
                    } else {
                        report.fail(
                            "A1R-plus",
                            indices.clone(),
                            Some(lhs_plus.sub(&rhs_plus).unwrap().to_string()),
                        );
                    }

                    let lhs_minus = commutator(&inner, set.a(l, -1)).unwrap();
                    let mut rhs_minus = Mat::zero(size, size);
                    if j == k {
                        rhs_minus = rhs_minus.sub(set.a(l, -1)).unwrap();
                    }
                    if j == l {
                        rhs_minus = rhs_minus.sub(set.a(k, -1)).unwrap();
                    }
                    if lhs_minus == rhs_minus {
                        report.pass("A1R-minus", indices);
                    } else {
                        report.fail(
                            "A1R-minus",
                            indices,
                            Some(lhs_minus.sub(&rhs_minus).unwrap().to_string()),
                        );
                    }
                }
            }
        }
    }

    // across sorts:
    //   {a_j^+, a_k^+} = {a_j^-, a_k^-} = 0
    //   {{a_j^+, a_k^-}, a_l^+} = δ_kl a_j^+
    //   {{a_j^+, a_k^-}, a_l^-} = δ_jl a_k^-
    let cross: [(Vec<usize>, Vec<usize>); 2] =
        [((1..=q).collect(), (q + 1..=n).collect()), ((q + 1..=n).collect(), (1..=q).collect())];
    for (js, ks) in &cross {
        for &j in js {
            for &k in ks {
                for xi in SIGNS {
                    let got = anticommutator(set.a(j, xi), set.a(k, xi)).unwrap();
                    let indices = format!("j={j},k={k},sign={}", sign_name(xi));
                    if got.is_zero() {
                        report.pass("A1Rel-same-sign", indices);
                    } else {
                        report.fail("A1Rel-same-sign", indices, Some(got.to_string()));
                    }
                }
                for l in 1..=n {
                    let inner = anticommutator(set.a(j, 1), set.a(k, -1)).unwrap();
                    let lhs_plus = anticommutator(&inner, set.a(l, 1)).unwrap();
                    let rhs_plus = if k == l { set.a(j, 1).clone() } else { Mat::zero(size, size) };
                    let indices = format!("j={j},k={k},l={l}");
                    if lhs_plus == rhs_plus {
                        report.pass("A1Rel-plus", indices.clone());
                    } else {
                        report.fail(
                            "A1Rel-plus",
                            indices.clone(),
                            Some(lhs_plus.sub(&rhs_plus).unwrap().to_string()),
                        );
                    }

                    let lhs_minus = anticommutator(&inner, set.a(l, -1)).unwrap();
                    let rhs_minus =
                        if j == l { set.a(k, -1).clone() } else { Mat::zero(size, size) };
                    if lhs_minus == rhs_minus {
                        report.pass("A1Rel-minus", indices);
                    } else {
                        report.fail(
                            "A1Rel-minus",
                            indices,
                            Some(lhs_minus.sub(&rhs_minus).unwrap().to_string()),
                        );
                    }
                }
            }
        }
    }

    // span identities against sl_{1,q,n−q,0}(n+1)
    let spec = AlgebraSpec::ZzSl { p: 1, q, r: n - q, s: 0 };
    let (family, _) = build::<FieldElem>(&spec)?;
    let ambient = size * size;
    let g01 =
        SpanBasis::from_matrices(ambient, (1..=q).flat_map(|j| [set.a(j, -1), set.a(j, 1)]))
            .unwrap();
    let g10 =
        SpanBasis::from_matrices(ambient, (q + 1..=n).flat_map(|j| [set.a(j, -1), set.a(j, 1)]))
            .unwrap();
    let mut g00_items = Vec::new();
    for sort in &sorts {
        for &j in sort {
            for &k in sort {
                g00_items.push(commutator(set.a(j, 1), set.a(k, -1)).unwrap());
            }
        }
    }
    let g00 = SpanBasis::from_matrices(ambient, g00_items.iter()).unwrap();
    let mut g11_items = Vec::new();
    for j in 1..=q {
        for k in q + 1..=n {
            g11_items.push(anticommutator(set.a(j, -1), set.a(k, 1)).unwrap());
            g11_items.push(anticommutator(set.a(j, 1), set.a(k, -1)).unwrap());
        }
    }
    let g11 = SpanBasis::from_matrices(ambient, g11_items.iter()).unwrap();
    check_spans_match(
        &mut report,
        "a-statistics",
        &[("(0,0)", g00), ("(0,1)", g01), ("(1,0)", g10), ("(1,1)", g11)],
        &family,
    );

    let g10_gen: Vec<Mat> =
        (q + 1..=n).flat_map(|j| [set.a(j, -1).clone(), set.a(j, 1).clone()]).collect();
    let g01_gen: Vec<Mat> =
        (1..=q).flat_map(|j| [set.a(j, -1).clone(), set.a(j, 1).clone()]).collect();
    match generate(&g10_gen, &g01_gen) {
        Ok(gen) => {
            let spans: Vec<(&str, SpanBasis<FieldElem>)> = [
                ("(0,0)", Degree::D00),
                ("(0,1)", Degree::D01),
                ("(1,0)", Degree::D10),
                ("(1,1)", Degree::D11),
            ]
            .iter()
            .map(|&(name, d)| (name, gen.basis.span_of_degree(d)))
            .collect();
            check_spans_match(&mut report, "a-statistics-generate", &spans, &family);
        }
        Err(err) => report.fail("a-statistics-generate", "", Some(err.to_string())),
    }
    Ok(report)
}
