use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lemmas::{binomial_row, lemma_double_binomial, lemma_mixed, qpow, z_sum_with, LinearRelation};
use super::{EvalContext, Group, IdentityDescriptor, Orders, Point, Role, Signature};
use crate::error::CatalogError;
use crate::sequence::Family;

const ALL: &[Family] = &[Family::U, Family::V, Family::W];
const ONLY_U: &[Family] = &[Family::U];
const ONLY_V: &[Family] = &[Family::V];

const ALTSUM_UV_QUESTION: &str =
    "second sum of the U/V particular forms indexed r-k-1+j as displayed, or r-k-n-1+j as in the general form";
const P_QUESTION: &str = "n=5 particular form contains a free r in a k-only identity; r or k";
const KT_QUESTION: &str = "sign of the right-hand side of the Tribonacci-Lucas power-of-5 sum";
const DBL5_QUESTION: &str = "index step per j in the fifth double binomial identity";

pub struct Registry {
    entries: Vec<IdentityDescriptor>,
    index: HashMap<String, usize>,
}

impl Registry {
    pub fn get(&self, id: &str) -> Result<&IdentityDescriptor, CatalogError> {
        self.index.get(id).map(|&i| &self.entries[i]).ok_or_else(|| CatalogError::UnknownId(id.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &IdentityDescriptor> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Ids of every proper identity, in registration order.
    pub fn identity_ids(&self) -> Vec<&str> {
        self.entries.iter().filter(|d| !d.is_reading()).map(|d| d.id.as_str()).collect()
    }

    /// Ids of the competing-reading fixtures.
    pub fn reading_ids(&self) -> Vec<&str> {
        self.entries.iter().filter(|d| d.is_reading()).map(|d| d.id.as_str()).collect()
    }

    /// Plain-text index: one tab-separated row per entry.
    pub fn index_table(&self) -> String {
        let mut out = String::from("id\tgroup\trole\tsignature\tfamilies\torders\tformula\n");
        for d in &self.entries {
            let fams: Vec<String> = d.families.iter().map(|f| f.to_string()).collect();
            let role = if d.is_reading() { "reading" } else { "identity" };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                d.id,
                d.group.as_str(),
                role,
                d.signature,
                fams.join(""),
                d.orders,
                d.formula
            ));
        }
        out
    }
}

pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

// ---- small arithmetic helpers -------------------------------------------------

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn pw(base: i64, exp: i64) -> BigInt {
    assert!(exp >= 0, "negative exponent {exp}");
    num_traits::pow(BigInt::from(base), exp as usize)
}

fn bpw(base: &BigInt, exp: i64) -> BigInt {
    assert!(exp >= 0, "negative exponent {exp}");
    num_traits::pow(base.clone(), exp as usize)
}

/// `(-1)^e` for any integer `e`.
fn sgn(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn sum(lo: i64, hi: i64, f: impl FnMut(i64) -> BigInt) -> BigInt {
    (lo..=hi).map(f).sum()
}

fn choose(row: &[BigInt], j: i64) -> &BigInt {
    &row[j as usize]
}

fn q(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn ceil_half(n: i64) -> i64 {
    (n + 1) / 2
}

// ---- builder --------------------------------------------------------------------

struct Def {
    desc: IdentityDescriptor,
}

fn def(id: impl Into<String>, group: Group, sig: &str, formula: impl Into<String>) -> Def {
    Def {
        desc: IdentityDescriptor {
            id: id.into(),
            group,
            formula: formula.into(),
            families: ALL.to_vec(),
            orders: Orders::Any,
            signature: Signature::parse(sig),
            role: Role::Identity,
            eval: Arc::new(|_, _| (BigRational::zero(), BigRational::zero())),
        },
    }
}

impl Def {
    fn families(mut self, f: &[Family]) -> Self {
        self.desc.families = f.to_vec();
        self
    }

    fn order(mut self, n: usize) -> Self {
        self.desc.orders = Orders::Only(vec![n]);
        self
    }

    fn orders(mut self, o: Orders) -> Self {
        self.desc.orders = o;
        self
    }

    fn reading(mut self, question: &'static str) -> Self {
        self.desc.role = Role::Reading { question };
        self
    }

    fn int<F>(mut self, f: F) -> IdentityDescriptor
    where
        F: Fn(&mut EvalContext, Point) -> (BigInt, BigInt) + Send + Sync + 'static,
    {
        self.desc.eval = Arc::new(move |c, p| {
            let (l, r) = f(c, *p);
            (q(l), q(r))
        });
        self.desc
    }

    fn rat<F>(mut self, f: F) -> IdentityDescriptor
    where
        F: Fn(&mut EvalContext, Point) -> (BigRational, BigRational) + Send + Sync + 'static,
    {
        self.desc.eval = Arc::new(move |c, p| f(c, *p));
        self.desc
    }
}

/// Same evaluator under another id with narrower applicability.
fn alias(
    base: &IdentityDescriptor,
    id: &str,
    families: &[Family],
    orders: Orders,
    formula: &str,
) -> IdentityDescriptor {
    IdentityDescriptor {
        id: id.to_string(),
        families: families.to_vec(),
        orders,
        formula: formula.to_string(),
        ..base.clone()
    }
}

// ---- shared evaluators ------------------------------------------------------

fn add_w(c: &mut EvalContext, p: Point) -> (BigInt, BigInt) {
    let Point { n, r, s, .. } = p;
    let lhs = c.w(r + s);
    let rhs = sum(1, n, |i| sum(0, n - i, |j| c.u(s - j + 1)) * c.w(r - i));
    (lhs, rhs)
}

fn add_cor(c: &mut EvalContext, p: Point) -> (BigInt, BigInt) {
    let Point { n, r, s, .. } = p;
    let lhs = c.w(r + s);
    let rhs = sum(1, n, |i| sum(0, n - i, |j| c.w(s - j + 1)) * c.u(r - i));
    (lhs, rhs)
}

fn add_n3(c: &mut EvalContext, p: Point) -> (BigInt, BigInt) {
    let Point { r, s, .. } = p;
    let rhs = c.u(s + 2) * c.w(r - 1) + (c.u(s + 1) + c.u(s)) * c.w(r - 2) + c.u(s + 1) * c.w(r - 3);
    (c.w(r + s), rhs)
}

fn add_n4(c: &mut EvalContext, p: Point) -> (BigInt, BigInt) {
    let Point { r, s, .. } = p;
    let rhs = c.u(s + 2) * c.w(r - 1)
        + (c.u(s + 1) + c.u(s) + c.u(s - 1)) * c.w(r - 2)
        + (c.u(s + 1) + c.u(s)) * c.w(r - 3)
        + c.u(s + 1) * c.w(r - 4);
    (c.w(r + s), rhs)
}

fn altsum_lhs(c: &mut EvalContext, p: Point, second_offset: i64) -> BigInt {
    let Point { n, r, k, .. } = p;
    let first = sum(0, k, |j| sgn(j) * c.w(r - k + j));
    let second = if n % 2 == 1 { sum(0, k, |j| sgn(j) * c.w(r - k - second_offset + j)) } else { BigInt::zero() };
    first + second
}

fn altsum_rhs(c: &mut EvalContext, p: Point) -> BigInt {
    let Point { n, r, k, .. } = p;
    let m = ceil_half(n);
    sgn(k) * sum(1, m, |j| c.w(r - 2 * j + 1)) + sum(1, m, |j| c.w(r - 2 * j - k))
}

/// The six recurrences obtained from the geometric and binomial sums at k = 1, 2.
fn recurrences(n: i64) -> [(&'static str, LinearRelation); 6] {
    let half = BigRational::new(int(-1), int(2));
    let mk = |f: &[i64], o: &[i64]| LinearRelation::integer(f, o).expect("valid relation");
    [
        ("K1-1", mk(&[4, -1, -2], &[2, n + 1, n + 2])),
        ("K1-2", mk(&[2, -2, 1], &[1, n + 2, 2 * n + 2])),
        (
            "K1-3",
            LinearRelation::new(vec![q(int(2)), half.clone(), half], vec![1, n, 2 * n + 1]).expect("valid relation"),
        ),
        ("K2-1", mk(&[4, -4, 1], &[2, n + 2, 2 * n + 2])),
        ("K2-2", mk(&[4, -2, -1], &[2, n + 1, 2 * n + 2])),
        ("K2-3", mk(&[4, -4, 1], &[1, 2, 2 * n + 2])),
    ]
}

fn double_binomial_sides(c: &mut EvalContext, p: Point, recurrence: usize, variant: u8) -> (BigRational, BigRational) {
    let (_, rel) = recurrences(p.n)[recurrence].clone();
    lemma_double_binomial(&rel, variant, &mut |i| q(c.w(i)), p.r, p.k as u32).expect("three taps, variant in range")
}

// ---- the registry --------------------------------------------------------------

fn build() -> Registry {
    let mut e: Vec<IdentityDescriptor> = Vec::new();
    recurrence_group(&mut e);
    index_addition_group(&mut e);
    alternating_group(&mut e);
    geometric_group(&mut e);
    fibonacci_group(&mut e);
    tribonacci_group(&mut e);
    binomial_group(&mut e);
    double_binomial_group(&mut e);
    let index = e.iter().enumerate().map(|(i, d)| (d.id.clone(), i)).collect::<HashMap<_, _>>();
    assert_eq!(index.len(), e.len(), "duplicate identity id");
    Registry { entries: e, index }
}

fn recurrence_group(e: &mut Vec<IdentityDescriptor>) {
    use Group::Recurrence as G;
    e.push(def("THREETERM", G, "r", "W(r) = 2W(r-1) - W(r-n-1)").int(|c, p| {
        let Point { n, r, .. } = p;
        (c.w(r), 2 * c.w(r - 1) - c.w(r - n - 1))
    }));
    e.push(def("BACKSTEP", G, "r", "W(-r) = 2W(-(r-n)) - W(-(r-n-1))").int(|c, p| {
        let Point { n, r, .. } = p;
        (c.w(-r), 2 * c.w(-(r - n)) - c.w(-(r - n - 1)))
    }));
    e.push(def("NOEPOST", G, "r", "V(r) = sum_{j=1..n} j U(r-j+1)").families(ONLY_V).int(|c, p| {
        let Point { n, r, .. } = p;
        (c.w(r), sum(1, n, |j| j * c.u(r - j + 1)))
    }));
    e.push(def("FOURTERM-1", G, "r", "V(r) = V(r-1) - (n+1)U(r-n) + 2U(r)").families(ONLY_V).int(|c, p| {
        let Point { n, r, .. } = p;
        (c.w(r), c.w(r - 1) - (n + 1) * c.u(r - n) + 2 * c.u(r))
    }));
    e.push(def("FOURTERM-2", G, "r", "V(r) = V(r-1) - nU(r-n) + U(r+1)").families(ONLY_V).int(|c, p| {
        let Point { n, r, .. } = p;
        (c.w(r), c.w(r - 1) - n * c.u(r - n) + c.u(r + 1))
    }));
    e.push(def("FOURTERM-3", G, "r", "V(r) = V(r-1) - 2nU(r) + (n+1)U(r+1)").families(ONLY_V).int(|c, p| {
        let Point { n, r, .. } = p;
        (c.w(r), c.w(r - 1) - 2 * n * c.u(r) + (n + 1) * c.u(r + 1))
    }));
    e.push(def("HC7", G, "k", "U(n+k) = 2^(n+k-2) - sum_{j=1..k} 2^(j-1) U(k-j)").families(ONLY_U).int(|c, p| {
        let Point { n, k, .. } = p;
        (c.w(n + k), pw(2, n + k - 2) - sum(1, k, |j| pw(2, j - 1) * c.u(k - j)))
    }));
    let rec_formulas = [
        ("REC-K1-1", "W(r) = 4W(r-2) - W(r-n-1) - 2W(r-n-2)"),
        ("REC-K1-2", "W(r) = 2W(r-1) - 2W(r-n-2) + W(r-2n-2)"),
        ("REC-K1-3", "2W(r) = 4W(r-1) - W(r-n) - W(r-2n-1)"),
        ("REC-K2-1", "W(r) = 4W(r-2) - 4W(r-n-2) + W(r-2n-2)"),
        ("REC-K2-2", "W(r) = 4W(r-2) - 2W(r-n-1) - W(r-2n-2)"),
        ("REC-K2-3", "W(r) = 4W(r-1) - 4W(r-2) + W(r-2n-2)"),
    ];
    for (idx, (id, formula)) in rec_formulas.into_iter().enumerate() {
        e.push(def(id, G, "r", formula).rat(move |c, p| {
            let (_, rel) = &recurrences(p.n)[idx];
            let rhs = rel.coeffs().iter().zip(rel.offsets()).map(|(f, &o)| f * q(c.w(p.r - o))).sum();
            (q(c.w(p.r)), rhs)
        }));
    }
}

fn index_addition_group(e: &mut Vec<IdentityDescriptor>) {
    use Group::IndexAddition as G;
    let add = def("ADD-W", G, "rs", "W(r+s) = sum_{i=1..n} (sum_{j=0..n-i} U(s-j+1)) W(r-i)").int(add_w);
    e.push(alias(&add, "ADD-U", ONLY_U, Orders::Any, "U(r+s) = sum_{i=1..n} (sum_{j=0..n-i} U(s-j+1)) U(r-i)"));
    e.push(alias(&add, "ADD-V", ONLY_V, Orders::Any, "V(r+s) = sum_{i=1..n} (sum_{j=0..n-i} U(s-j+1)) V(r-i)"));
    e.push(add);
    let cor = def("ADD-COR", G, "rs", "W(r+s) = sum_{i=1..n} (sum_{j=0..n-i} W(s-j+1)) U(r-i)").int(add_cor);
    e.push(alias(&cor, "ADD-COR-V", ONLY_V, Orders::Any, "V(r+s) = sum_{i=1..n} (sum_{j=0..n-i} V(s-j+1)) U(r-i)"));
    e.push(cor);

    let n2 = def("ADD-N2", G, "rs", "W(r+s) = U(s+2)W(r-1) + U(s+1)W(r-2)").order(2).int(|c, p| {
        let Point { r, s, .. } = p;
        (c.w(r + s), c.u(s + 2) * c.w(r - 1) + c.u(s + 1) * c.w(r - 2))
    });
    e.push(alias(&n2, "ADD-N2-F", ONLY_U, Orders::Only(vec![2]), "F(r+s) = F(s+2)F(r-1) + F(s+1)F(r-2)"));
    e.push(alias(&n2, "ADD-N2-L", ONLY_V, Orders::Only(vec![2]), "L(r+s) = F(s+2)L(r-1) + F(s+1)L(r-2)"));
    e.push(n2);

    let n3_formula = "W(r+s) = T(s+2)W(r-1) + (T(s+1)+T(s))W(r-2) + T(s+1)W(r-3)";
    let n3 = def("ADD-N3", G, "rs", n3_formula).order(3).int(add_n3);
    e.push(alias(&n3, "ADD-N3-T", ONLY_U, Orders::Only(vec![3]), &n3_formula.replace('W', "T")));
    e.push(alias(&n3, "ADD-N3-K", ONLY_V, Orders::Only(vec![3]), &n3_formula.replace('W', "K")));
    e.push(n3);
    e.push(def("TRIB-103", G, "r", "W(r-19) = 56W(r-2) - 103W(r-3)").order(3).int(|c, p| {
        let r = p.r;
        (c.w(r - 19), 56 * c.w(r - 2) - 103 * c.w(r - 3))
    }));
    e.push(def("TRIB-3TERM", G, "r", "W(r) = 2W(r-1) - W(r-4)").order(3).int(|c, p| {
        let r = p.r;
        (c.w(r), 2 * c.w(r - 1) - c.w(r - 4))
    }));
    e.push(
        def("ADD-COR-N3-K", G, "rs", "K(r+s) = K(s+2)T(r-1) + (K(s+1)+K(s))T(r-2) + K(s+1)T(r-3)")
            .families(ONLY_V)
            .order(3)
            .int(|c, p| {
                let Point { r, s, .. } = p;
                let rhs = c.w(s + 2) * c.u(r - 1) + (c.w(s + 1) + c.w(s)) * c.u(r - 2) + c.w(s + 1) * c.u(r - 3);
                (c.w(r + s), rhs)
            }),
    );
    e.push(def("KT-3TERM", G, "r", "K(r-4) = -T(r-1) + 5T(r-3)").families(ONLY_V).order(3).int(|c, p| {
        let r = p.r;
        (c.w(r - 4), 5 * c.u(r - 3) - c.u(r - 1))
    }));

    let n4_formula = "W(r+s) = M(s+2)W(r-1) + (M(s+1)+M(s)+M(s-1))W(r-2) + (M(s+1)+M(s))W(r-3) + M(s+1)W(r-4)";
    let n4 = def("ADD-N4", G, "rs", n4_formula).order(4).int(add_n4);
    e.push(alias(&n4, "ADD-N4-M", ONLY_U, Orders::Only(vec![4]), &n4_formula.replace('W', "M")));
    e.push(alias(&n4, "ADD-N4-R", ONLY_V, Orders::Only(vec![4]), &n4_formula.replace('W', "R")));
    e.push(n4);
    e.push(
        def(
            "ADD-COR-N4-R",
            G,
            "rs",
            "R(r+s) = R(s+2)M(r-1) + (R(s+1)+R(s)+R(s-1))M(r-2) + (R(s+1)+R(s))M(r-3) + R(s+1)M(r-4)",
        )
        .families(ONLY_V)
        .order(4)
        .int(|c, p| {
            let Point { r, s, .. } = p;
            let rhs = c.w(s + 2) * c.u(r - 1)
                + (c.w(s + 1) + c.w(s) + c.w(s - 1)) * c.u(r - 2)
                + (c.w(s + 1) + c.w(s)) * c.u(r - 3)
                + c.w(s + 1) * c.u(r - 4);
            (c.w(r + s), rhs)
        }),
    );
    let tetra: [(&str, &str, i64, [i64; 3]); 3] = [
        ("RM-9", "R(r-9) = -M(r-1) - 4M(r-3) + 15M(r-4)", 9, [-1, -4, 15]),
        ("RM-5", "R(r-5) = -M(r-1) + M(r-3) + 7M(r-4)", 5, [-1, 1, 7]),
        ("RM-4", "R(r-4) = -M(r-1) + 6M(r-3) - M(r-4)", 4, [-1, 6, -1]),
    ];
    for (id, formula, shift, [a, b, d]) in tetra {
        e.push(def(id, G, "r", formula).families(ONLY_V).order(4).int(move |c, p| {
            let r = p.r;
            (c.w(r - shift), a * c.u(r - 1) + b * c.u(r - 3) + d * c.u(r - 4))
        }));
    }
}

fn alternating_group(e: &mut Vec<IdentityDescriptor>) {
    use Group::AlternatingSum as G;
    e.push(def("ZSUM", G, "r", "Z(r) + Z(r-1) = W(r) + (n mod 2) W(r-n-1)").int(|c, p| {
        let Point { n, r, .. } = p;
        let lhs = z_sum_with(n, |i| c.w(i), r) + z_sum_with(n, |i| c.w(i), r - 1);
        (lhs, c.w(r) + (n % 2) * c.w(r - n - 1))
    }));
    e.push(def("ZSUM-CASES", G, "r", "Z(r) + Z(r-1) = W(r) (n even), 2W(r-1) (n odd)").int(|c, p| {
        let Point { n, r, .. } = p;
        let lhs = z_sum_with(n, |i| c.w(i), r) + z_sum_with(n, |i| c.w(i), r - 1);
        (lhs, if n % 2 == 0 { c.w(r) } else { 2 * c.w(r - 1) })
    }));
    let altsum_rhs_text = "(-1)^k sum_{j=1..ceil(n/2)} X(r-2j+1) + sum_{j=1..ceil(n/2)} X(r-2j-k)";
    e.push(
        def(
            "ALTSUM",
            G,
            "rk",
            format!(
                "sum_j (-1)^j W(r-k+j) + (n mod 2) sum_j (-1)^j W(r-k-n-1+j) = {}",
                altsum_rhs_text.replace('X', "W")
            ),
        )
        .int(|c, p| (altsum_lhs(c, p, p.n + 1), altsum_rhs(c, p))),
    );
    for (fam, letter) in [(ONLY_U, 'U'), (ONLY_V, 'V')] {
        let rhs = altsum_rhs_text.replace('X', &letter.to_string());
        e.push(
            def(
                format!("ALTSUM-{letter}-PRINTED"),
                G,
                "rk",
                format!("sum_j (-1)^j {letter}(r-k+j) + (n mod 2) sum_j (-1)^j {letter}(r-k-1+j) = {rhs}"),
            )
            .families(fam)
            .reading(ALTSUM_UV_QUESTION)
            .int(|c, p| (altsum_lhs(c, p, 1), altsum_rhs(c, p))),
        );
        e.push(
            def(
                format!("ALTSUM-{letter}-GENERAL"),
                G,
                "rk",
                format!("sum_j (-1)^j {letter}(r-k+j) + (n mod 2) sum_j (-1)^j {letter}(r-k-n-1+j) = {rhs}"),
            )
            .families(fam)
            .reading(ALTSUM_UV_QUESTION)
            .int(|c, p| (altsum_lhs(c, p, p.n + 1), altsum_rhs(c, p))),
        );
    }
    e.push(
        def(
            "ALTSUM-EVEN",
            G,
            "rk",
            "sum_j (-1)^j W(r-k+j) = (-1)^k sum_{j=1..n/2} W(r-2j+1) + sum_{j=1..n/2} W(r-2j-k)",
        )
        .orders(Orders::Even)
        .int(|c, p| {
            let Point { n, r, k, .. } = p;
            let lhs = sum(0, k, |j| sgn(j) * c.w(r - k + j));
            let rhs = sgn(k) * sum(1, n / 2, |j| c.w(r - 2 * j + 1)) + sum(1, n / 2, |j| c.w(r - 2 * j - k));
            (lhs, rhs)
        }),
    );
    e.push(
        def(
            "ALTSUM-ODD",
            G,
            "rk",
            "2 sum_j (-1)^j W(r-k+j-1) = (-1)^k sum_{j=1..(n+1)/2} W(r-2j+1) + sum_{j=1..(n+1)/2} W(r-2j-k)",
        )
        .orders(Orders::Odd)
        .int(|c, p| {
            let Point { n, r, k, .. } = p;
            let m = (n + 1) / 2;
            let lhs = 2 * sum(0, k, |j| sgn(j) * c.w(r - k + j - 1));
            let rhs = sgn(k) * sum(1, m, |j| c.w(r - 2 * j + 1)) + sum(1, m, |j| c.w(r - 2 * j - k));
            (lhs, rhs)
        }),
    );
    e.push(def("ALTSUM-F", G, "rk", "sum_j (-1)^j W(r-k+j) = (-1)^k W(r-1) + W(r-k-2)").order(2).int(|c, p| {
        let Point { r, k, .. } = p;
        (sum(0, k, |j| sgn(j) * c.w(r - k + j)), sgn(k) * c.w(r - 1) + c.w(r - k - 2))
    }));
    e.push(
        def("ALTSUM-T", G, "rk", "2 sum_j (-1)^j W(r-k-1+j) = (-1)^k (W(r-1)+W(r-3)) + W(r-k-2) + W(r-k-4)")
            .order(3)
            .int(|c, p| {
                let Point { r, k, .. } = p;
                let lhs = 2 * sum(0, k, |j| sgn(j) * c.w(r - k - 1 + j));
                (lhs, sgn(k) * (c.w(r - 1) + c.w(r - 3)) + c.w(r - k - 2) + c.w(r - k - 4))
            }),
    );
    e.push(
        def("ALTSUM-M", G, "rk", "sum_j (-1)^j W(r-k+j) = (-1)^k (W(r-1)+W(r-3)) + W(r-k-2) + W(r-k-4)").order(4).int(
            |c, p| {
                let Point { r, k, .. } = p;
                let lhs = sum(0, k, |j| sgn(j) * c.w(r - k + j));
                (lhs, sgn(k) * (c.w(r - 1) + c.w(r - 3)) + c.w(r - k - 2) + c.w(r - k - 4))
            },
        ),
    );
    e.push(
        def(
            "ALTSUM-P",
            G,
            "rk",
            "2 sum_j (-1)^j W(r-k-1+j) = (-1)^k (W(r-1)+W(r-3)+W(r-5)) + W(r-k-2) + W(r-k-4) + W(r-k-6)",
        )
        .order(5)
        .int(|c, p| {
            let Point { r, k, .. } = p;
            let lhs = 2 * sum(0, k, |j| sgn(j) * c.w(r - k - 1 + j));
            let rhs =
                sgn(k) * (c.w(r - 1) + c.w(r - 3) + c.w(r - 5)) + c.w(r - k - 2) + c.w(r - k - 4) + c.w(r - k - 6);
            (lhs, rhs)
        }),
    );
    e.push(def("ALTSUM-F-P", G, "k", "sum_j (-1)^j W(j) = (-1)^k W(k-1) + W(-2)").order(2).int(|c, p| {
        let k = p.k;
        (sum(0, k, |j| sgn(j) * c.w(j)), sgn(k) * c.w(k - 1) + c.w(-2))
    }));
    e.push(def("ALTSUM-T-P", G, "k", "2 sum_j (-1)^j W(j) = (-1)^k (W(k)+W(k-2)) + W(-1) + W(-3)").order(3).int(
        |c, p| {
            let k = p.k;
            (2 * sum(0, k, |j| sgn(j) * c.w(j)), sgn(k) * (c.w(k) + c.w(k - 2)) + c.w(-1) + c.w(-3))
        },
    ));
    e.push(def("ALTSUM-M-P", G, "k", "sum_j (-1)^j W(j) = (-1)^k (W(k-1)+W(k-3)) + W(-2) + W(-4)").order(4).int(
        |c, p| {
            let k = p.k;
            (sum(0, k, |j| sgn(j) * c.w(j)), sgn(k) * (c.w(k - 1) + c.w(k - 3)) + c.w(-2) + c.w(-4))
        },
    ));
    e.push(
        def("ALTSUM-P-P-PRINTED", G, "rk", "2 sum_j (-1)^j W(j) = (-1)^k (W(k)+W(k-2)+W(r-4)) + W(-1) + W(-3) + W(-5)")
            .order(5)
            .reading(P_QUESTION)
            .int(|c, p| {
                let Point { r, k, .. } = p;
                let lhs = 2 * sum(0, k, |j| sgn(j) * c.w(j));
                (lhs, sgn(k) * (c.w(k) + c.w(k - 2) + c.w(r - 4)) + c.w(-1) + c.w(-3) + c.w(-5))
            }),
    );
    e.push(
        def("ALTSUM-P-P", G, "k", "2 sum_j (-1)^j W(j) = (-1)^k (W(k)+W(k-2)+W(k-4)) + W(-1) + W(-3) + W(-5)")
            .order(5)
            .reading(P_QUESTION)
            .int(|c, p| {
                let k = p.k;
                let lhs = 2 * sum(0, k, |j| sgn(j) * c.w(j));
                (lhs, sgn(k) * (c.w(k) + c.w(k - 2) + c.w(k - 4)) + c.w(-1) + c.w(-3) + c.w(-5))
            }),
    );
}

fn geo1(c: &mut EvalContext, n: i64, r: i64, k: i64) -> (BigInt, BigInt) {
    (sum(0, k, |j| pw(2, k - j) * c.w(r - k - n - 1 + j)), pw(2, k + 1) * c.w(r - k - 1) - c.w(r))
}

fn geo2(c: &mut EvalContext, n: i64, r: i64, k: i64) -> (BigInt, BigInt) {
    let lhs = 2 * sum(0, k, |j| sgn(j) * c.w(r - n * k - k - 1 + (n + 1) * j));
    (lhs, sgn(k) * c.w(r) + c.w(r - (k + 1) * (n + 1)))
}

fn geo3(c: &mut EvalContext, n: i64, r: i64, k: i64) -> (BigInt, BigInt) {
    (sum(0, k, |j| pw(2, j) * c.w(r - n * k + 1 + n * j)), pw(2, k + 1) * c.w(r) - c.w(r - (k + 1) * n))
}

fn sum_geo1(c: &mut EvalContext, n: i64, k: i64) -> (BigInt, BigInt) {
    (sum(0, k, |j| pw(2, k - j) * c.w(j)), pw(2, k + 1) * c.w(n) - c.w(k + n + 1))
}

fn sum_geo2(c: &mut EvalContext, n: i64, k: i64) -> (BigInt, BigInt) {
    let lhs = 2 * sum(0, k, |j| sgn(j) * c.w((n + 1) * j));
    (lhs, sgn(k) * c.w(k * (n + 1) + 1) + 2 * c.w(0) - c.w(1))
}

fn sum_geo3(c: &mut EvalContext, n: i64, k: i64) -> (BigInt, BigInt) {
    let lhs = sum(0, k, |j| pw(2, j) * c.w(n * j));
    (lhs, pw(2, k + 1) * c.w(k * n - 1) - 4 * c.w(n - 1) + 2 * c.w(n) + c.w(0))
}

fn geometric_group(e: &mut Vec<IdentityDescriptor>) {
    use Group::GeometricSum as G;
    e.push(
        def("GEO-1", G, "rk", "sum_j 2^(k-j) W(r-k-n-1+j) = 2^(k+1) W(r-k-1) - W(r)")
            .int(|c, p| geo1(c, p.n, p.r, p.k)),
    );
    e.push(
        def("GEO-2", G, "rk", "2 sum_j (-1)^j W(r-nk-k-1+(n+1)j) = (-1)^k W(r) + W(r-(k+1)(n+1))")
            .int(|c, p| geo2(c, p.n, p.r, p.k)),
    );
    e.push(
        def("GEO-3", G, "rk", "sum_j 2^j W(r-nk+1+nj) = 2^(k+1) W(r) - W(r-(k+1)n)").int(|c, p| geo3(c, p.n, p.r, p.k)),
    );
    e.push(def("SUM-GEO-1", G, "k", "sum_j 2^(k-j) W(j) = 2^(k+1) W(n) - W(k+n+1)").int(|c, p| sum_geo1(c, p.n, p.k)));
    e.push(
        def("SUM-GEO-2", G, "k", "2 sum_j (-1)^j W((n+1)j) = (-1)^k W(k(n+1)+1) + 2W(0) - W(1)")
            .int(|c, p| sum_geo2(c, p.n, p.k)),
    );
    e.push(
        def("SUM-GEO-3", G, "k", "sum_j 2^j W(nj) = 2^(k+1) W(kn-1) - 4W(n-1) + 2W(n) + W(0)")
            .int(|c, p| sum_geo3(c, p.n, p.k)),
    );
    // the n = 2, 3, 4 displays, with n written out as a literal
    for (nn, label) in [(2i64, 'F'), (3, 'T'), (4, 'M')] {
        let n1 = nn + 1;
        e.push(
            def(format!("GEO-1-{label}"), G, "rk", format!("sum_j 2^(k-j) W(r-k-{n1}+j) = 2^(k+1) W(r-k-1) - W(r)"))
                .order(nn as usize)
                .int(move |c, p| geo1(c, nn, p.r, p.k)),
        );
        e.push(
            def(
                format!("GEO-2-{label}"),
                G,
                "rk",
                format!("2 sum_j (-1)^j W(r-{n1}k-1+{n1}j) = (-1)^k W(r) + W(r-{n1}(k+1))"),
            )
            .order(nn as usize)
            .int(move |c, p| geo2(c, nn, p.r, p.k)),
        );
        e.push(
            def(
                format!("GEO-3-{label}"),
                G,
                "rk",
                format!("sum_j 2^j W(r-{nn}k+1+{nn}j) = 2^(k+1) W(r) - W(r-{nn}(k+1))"),
            )
            .order(nn as usize)
            .int(move |c, p| geo3(c, nn, p.r, p.k)),
        );
        e.push(
            def(format!("SUM-GEO-1-{label}"), G, "k", format!("sum_j 2^(k-j) W(j) = 2^(k+1) W({nn}) - W(k+{n1})"))
                .order(nn as usize)
                .int(move |c, p| sum_geo1(c, nn, p.k)),
        );
        e.push(
            def(
                format!("SUM-GEO-2-{label}"),
                G,
                "k",
                format!("2 sum_j (-1)^j W({n1}j) = (-1)^k W({n1}k+1) + 2W(0) - W(1)"),
            )
            .order(nn as usize)
            .int(move |c, p| sum_geo2(c, nn, p.k)),
        );
        e.push(
            def(
                format!("SUM-GEO-3-{label}"),
                G,
                "k",
                format!("sum_j 2^j W({nn}j) = 2^(k+1) W({nn}k-1) - 4W({}) + 2W({nn}) + W(0)", nn - 1),
            )
            .order(nn as usize)
            .int(move |c, p| sum_geo3(c, nn, p.k)),
        );
    }
}

fn fibonacci_group(e: &mut Vec<IdentityDescriptor>) {
    use Group::FibonacciSum as G;
    e.push(
        def("FIB-FS-1", G, "rsk", "F(s) sum_j F(s+1)^(k-j) W(r-1+sj) = W(r+s(k+1)) - F(s+1)^(k+1) W(r)").order(2).int(
            |c, p| {
                let Point { r, s, k, .. } = p;
                let (fs, fs1) = (c.u(s), c.u(s + 1));
                let lhs = &fs * sum(0, k, |j| bpw(&fs1, k - j) * c.w(r - 1 + s * j));
                (lhs, c.w(r + s * (k + 1)) - bpw(&fs1, k + 1) * c.w(r))
            },
        ),
    );
    e.push(
        def(
            "FIB-FS-2",
            G,
            "rsk",
            "sum_j (-1)^j F(s)^(k-j) F(s+1)^j W(r-k+s+j) = (-1)^k F(s+1)^(k+1) W(r) + F(s)^(k+1) W(r-k-1)",
        )
        .order(2)
        .int(|c, p| {
            let Point { r, s, k, .. } = p;
            let (fs, fs1) = (c.u(s), c.u(s + 1));
            let lhs = sum(0, k, |j| sgn(j) * bpw(&fs, k - j) * bpw(&fs1, j) * c.w(r - k + s + j));
            (lhs, sgn(k) * bpw(&fs1, k + 1) * c.w(r) + bpw(&fs, k + 1) * c.w(r - k - 1))
        }),
    );
    e.push(
        def("FIB-FS-3", G, "rsk", "F(s) sum_j F(s-1)^(k-j) W(r-sk-s+1+sj) = W(r) - F(s-1)^(k+1) W(r-(k+1)s)")
            .order(2)
            .int(|c, p| {
                let Point { r, s, k, .. } = p;
                let (fs, fsm) = (c.u(s), c.u(s - 1));
                let lhs = &fs * sum(0, k, |j| bpw(&fsm, k - j) * c.w(r - s * k - s + 1 + s * j));
                (lhs, c.w(r) - bpw(&fsm, k + 1) * c.w(r - (k + 1) * s))
            }),
    );
    e.push(def("FIB-FS-1-P", G, "sk", "F(s) sum_j F(s+1)^(k-j) W(sj) = W(sk+s+1) - F(s+1)^(k+1) W(1)").order(2).int(
        |c, p| {
            let Point { s, k, .. } = p;
            let (fs, fs1) = (c.u(s), c.u(s + 1));
            let lhs = &fs * sum(0, k, |j| bpw(&fs1, k - j) * c.w(s * j));
            (lhs, c.w(s * k + s + 1) - bpw(&fs1, k + 1) * c.w(1))
        },
    ));
    e.push(
        def(
            "FIB-FS-2-P",
            G,
            "sk",
            "sum_j (-1)^j F(s)^(k-j) F(s+1)^j W(j) = (-1)^k F(s+1)^(k+1) W(k-s) + F(s)^(k+1) W(-s-1)",
        )
        .order(2)
        .int(|c, p| {
            let Point { s, k, .. } = p;
            let (fs, fs1) = (c.u(s), c.u(s + 1));
            let lhs = sum(0, k, |j| sgn(j) * bpw(&fs, k - j) * bpw(&fs1, j) * c.w(j));
            (lhs, sgn(k) * bpw(&fs1, k + 1) * c.w(k - s) + bpw(&fs, k + 1) * c.w(-s - 1))
        }),
    );
    e.push(def("FIB-FS-3-P", G, "sk", "F(s) sum_j F(s-1)^(k-j) W(sj) = W(sk+s-1) - F(s-1)^(k+1) W(-1)").order(2).int(
        |c, p| {
            let Point { s, k, .. } = p;
            let (fs, fsm) = (c.u(s), c.u(s - 1));
            let lhs = &fs * sum(0, k, |j| bpw(&fsm, k - j) * c.w(s * j));
            (lhs, c.w(s * k + s - 1) - bpw(&fsm, k + 1) * c.w(-1))
        },
    ));
    e.push(def("FIB-MIX-REL", G, "rs", "W(s-1) F(r) = -W(s) F(r+1) + W(r+s)").order(2).int(|c, p| {
        let Point { r, s, .. } = p;
        (c.w(s - 1) * c.u(r), c.w(r + s) - c.w(s) * c.u(r + 1))
    }));
    // generated from the mixed-sequence lemma with X = F, Y = W
    e.push(
        def(
            "FIB-MIX",
            G,
            "rsk",
            "sum_j (-1)^j W(s-1)^(k-j) W(s)^j W(r+s+j) = F(r) W(s-1)^(k+1) - (-1)^(k+1) F(r+k+1) W(s)^(k+1)",
        )
        .order(2)
        .int(|c, p| {
            let Point { r, s, k, .. } = p;
            let (ws, wsm) = (c.w(s), c.w(s - 1));
            let lhs = sum(0, k, |j| sgn(j) * bpw(&wsm, k - j) * bpw(&ws, j) * c.w(r + s + j));
            (lhs, c.u(r) * bpw(&wsm, k + 1) - sgn(k + 1) * c.u(r + k + 1) * bpw(&ws, k + 1))
        }),
    );
    e.push(
        def(
            "FIB-MIX-P",
            G,
            "sk",
            "sum_j (-1)^j W(s-1)^(k-j) W(s)^j W(j) = (-1)^(s-1) F(s) W(s-1)^(k+1) - (-1)^(k-1) F(k-s+1) W(s)^(k+1)",
        )
        .order(2)
        .int(|c, p| {
            let Point { s, k, .. } = p;
            let (ws, wsm) = (c.w(s), c.w(s - 1));
            let lhs = sum(0, k, |j| sgn(j) * bpw(&wsm, k - j) * bpw(&ws, j) * c.w(j));
            (lhs, sgn(s - 1) * c.u(s) * bpw(&wsm, k + 1) - sgn(k - 1) * c.u(k - s + 1) * bpw(&ws, k + 1))
        }),
    );
}

fn tribonacci_group(e: &mut Vec<IdentityDescriptor>) {
    use Group::TribonacciSum as G;
    // T(r) = 5T(r-2) - K(r-3), fed to the mixed-sequence lemma and scaled by -5^k
    e.push(
        def("KT-5POW", G, "rk", "sum_j 5^(k-j) K(r-2k-3+2j) = 5^(k+1) T(r-2k-2) - T(r)").families(ONLY_V).order(3).rat(
            |c, p| {
                let rel = LinearRelation::integer(&[5, -1], &[2, 3]).expect("valid relation");
                let (w, u) = c.split();
                let mut t = |i: i64| q(u.value(i));
                let mut kk = |i: i64| q(w.value(i));
                let (l, r) = lemma_mixed_split(&rel, &mut t, &mut kk, p.r, p.k as u32);
                let scale = -qpow(&q(int(5)), p.k);
                (l * &scale, r * scale)
            },
        ),
    );
    e.push(def("KT-5POW-P", G, "k", "sum_j 5^(k-j) K(2j) = 5^(k+1) - T(2k+3)").families(ONLY_V).order(3).int(
        |c, p| {
            let k = p.k;
            (sum(0, k, |j| pw(5, k - j) * c.w(2 * j)), pw(5, k + 1) - c.u(2 * k + 3))
        },
    ));
    e.push(
        def("KT-5POW-PRINTED", G, "rk", "sum_j 5^(k-j) K(r-2k-3+2j) = T(r) - 5^(k+1) T(r-2k-2)")
            .families(ONLY_V)
            .order(3)
            .reading(KT_QUESTION)
            .int(|c, p| {
                let Point { r, k, .. } = p;
                let lhs = sum(0, k, |j| pw(5, k - j) * c.w(r - 2 * k - 3 + 2 * j));
                (lhs, c.u(r) - pw(5, k + 1) * c.u(r - 2 * k - 2))
            }),
    );
    e.push(
        def("KT-5POW-P-PRINTED", G, "k", "sum_j 5^(k-j) K(2j) = T(2k+3) - 5^(k+1)")
            .families(ONLY_V)
            .order(3)
            .reading(KT_QUESTION)
            .int(|c, p| {
                let k = p.k;
                (sum(0, k, |j| pw(5, k - j) * c.w(2 * j)), c.u(2 * k + 3) - pw(5, k + 1))
            }),
    );
    e.push(def("TRIB-103-SUM-1", G, "rk", "103 sum_j 56^j W(r+16+17j) = 56^(k+1) W(r+17k+17) - W(r)").order(3).int(
        |c, p| {
            let Point { r, k, .. } = p;
            (103 * sum(0, k, |j| pw(56, j) * c.w(r + 16 + 17 * j)), pw(56, k + 1) * c.w(r + 17 * k + 17) - c.w(r))
        },
    ));
    e.push(
        def("TRIB-103-SUM-2", G, "rk", "56 sum_j (-1)^j 103^j W(r+17+16j) = W(r) - (-103)^(k+1) W(r+16k+16)")
            .order(3)
            .int(|c, p| {
                let Point { r, k, .. } = p;
                let lhs = 56 * sum(0, k, |j| sgn(j) * pw(103, j) * c.w(r + 17 + 16 * j));
                (lhs, c.w(r) - pw(-103, k + 1) * c.w(r + 16 * k + 16))
            }),
    );
    e.push(
        def("TRIB-103-SUM-3", G, "rk", "sum_j 103^(k-j) 56^j W(r-16+j) = -103^(k+1) W(r) + 56^(k+1) W(r+k+1)")
            .order(3)
            .int(|c, p| {
                let Point { r, k, .. } = p;
                let lhs = sum(0, k, |j| pw(103, k - j) * pw(56, j) * c.w(r - 16 + j));
                (lhs, pw(56, k + 1) * c.w(r + k + 1) - pw(103, k + 1) * c.w(r))
            }),
    );
    e.push(def("TRIB-103-SUM-1-P", G, "k", "103 sum_j 56^j W(17j) = 56^(k+1) W(17k+1) - W(-16)").order(3).int(
        |c, p| {
            let k = p.k;
            (103 * sum(0, k, |j| pw(56, j) * c.w(17 * j)), pw(56, k + 1) * c.w(17 * k + 1) - c.w(-16))
        },
    ));
    e.push(
        def("TRIB-103-SUM-2-P", G, "k", "56 sum_j (-1)^j 103^j W(16j) = W(-17) - (-103)^(k+1) W(16k-1)").order(3).int(
            |c, p| {
                let k = p.k;
                let lhs = 56 * sum(0, k, |j| sgn(j) * pw(103, j) * c.w(16 * j));
                (lhs, c.w(-17) - pw(-103, k + 1) * c.w(16 * k - 1))
            },
        ),
    );
    e.push(
        def("TRIB-103-SUM-3-P", G, "k", "sum_j 103^(k-j) 56^j W(j) = -103^(k+1) W(16) + 56^(k+1) W(k+17)")
            .order(3)
            .int(|c, p| {
                let k = p.k;
                let lhs = sum(0, k, |j| pw(103, k - j) * pw(56, j) * c.w(j));
                (lhs, pw(56, k + 1) * c.w(k + 17) - pw(103, k + 1) * c.w(16))
            }),
    );
}

fn lemma_mixed_split(
    rel: &LinearRelation,
    x: &mut impl FnMut(i64) -> BigRational,
    y: &mut impl FnMut(i64) -> BigRational,
    r: i64,
    k: u32,
) -> (BigRational, BigRational) {
    lemma_mixed(rel, x, y, r, k).expect("two-tap relation")
}

fn binomial_group(e: &mut Vec<IdentityDescriptor>) {
    use Group::Binomial as G;
    e.push(def("BINOM-1", G, "rk", "sum_j (-1)^j C(k,j) 2^j W(r-(n+1)k+nj) = (-1)^k W(r)").int(|c, p| {
        let Point { n, r, k, .. } = p;
        let row = binomial_row(k as u32);
        let lhs = sum(0, k, |j| sgn(j) * choose(&row, j) * pw(2, j) * c.w(r - (n + 1) * k + n * j));
        (lhs, sgn(k) * c.w(r))
    }));
    e.push(def("BINOM-2", G, "rk", "sum_j C(k,j) W(r-nk+(n+1)j) = 2^k W(r)").int(|c, p| {
        let Point { n, r, k, .. } = p;
        let row = binomial_row(k as u32);
        (sum(0, k, |j| choose(&row, j) * c.w(r - n * k + (n + 1) * j)), pw(2, k) * c.w(r))
    }));
    e.push(def("BINOM-3", G, "rk", "sum_j (-1)^j C(k,j) 2^(k-j) W(r+nk+j) = W(r)").int(|c, p| {
        let Point { n, r, k, .. } = p;
        let row = binomial_row(k as u32);
        (sum(0, k, |j| sgn(j) * choose(&row, j) * pw(2, k - j) * c.w(r + n * k + j)), c.w(r))
    }));
    e.push(def("BINOM-1-P", G, "k", "sum_j (-1)^j C(k,j) 2^j W(nj) = (-1)^k W((n+1)k)").int(|c, p| {
        let Point { n, k, .. } = p;
        let row = binomial_row(k as u32);
        (sum(0, k, |j| sgn(j) * choose(&row, j) * pw(2, j) * c.w(n * j)), sgn(k) * c.w((n + 1) * k))
    }));
    e.push(def("BINOM-2-P", G, "k", "sum_j C(k,j) W((n+1)j) = 2^k W(nk)").int(|c, p| {
        let Point { n, k, .. } = p;
        let row = binomial_row(k as u32);
        (sum(0, k, |j| choose(&row, j) * c.w((n + 1) * j)), pw(2, k) * c.w(n * k))
    }));
    e.push(def("HISERT", G, "k", "sum_j (-1)^j C(k,j) 2^(k-j) W(j) = W(-nk)").int(|c, p| {
        let Point { n, k, .. } = p;
        let row = binomial_row(k as u32);
        (sum(0, k, |j| sgn(j) * choose(&row, j) * pw(2, k - j) * c.w(j)), c.w(-n * k))
    }));

    e.push(
        def("FIB-BINOM-1", G, "rsk", "sum_j (-1)^j C(k,j) F(s-1)^(k-j) W(r-k+sj) = (-1)^k F(s)^k W(r)").order(2).int(
            |c, p| {
                let Point { r, s, k, .. } = p;
                let row = binomial_row(k as u32);
                let (fs, fsm) = (c.u(s), c.u(s - 1));
                let lhs = sum(0, k, |j| sgn(j) * choose(&row, j) * bpw(&fsm, k - j) * c.w(r - k + s * j));
                (lhs, sgn(k) * bpw(&fs, k) * c.w(r))
            },
        ),
    );
    e.push(def("FIB-BINOM-2", G, "rsk", "sum_j C(k,j) F(s-1)^(k-j) F(s)^j W(r-sk+j) = W(r)").order(2).int(|c, p| {
        let Point { r, s, k, .. } = p;
        let row = binomial_row(k as u32);
        let (fs, fsm) = (c.u(s), c.u(s - 1));
        let lhs = sum(0, k, |j| choose(&row, j) * bpw(&fsm, k - j) * bpw(&fs, j) * c.w(r - s * k + j));
        (lhs, c.w(r))
    }));
    e.push(def("FIB-BINOM-3", G, "rsk", "sum_j (-1)^(k-j) C(k,j) F(s+1)^(k-j) W(r+k+sj) = F(s)^k W(r)").order(2).int(
        |c, p| {
            let Point { r, s, k, .. } = p;
            let row = binomial_row(k as u32);
            let (fs, fs1) = (c.u(s), c.u(s + 1));
            let lhs = sum(0, k, |j| sgn(k - j) * choose(&row, j) * bpw(&fs1, k - j) * c.w(r + k + s * j));
            (lhs, bpw(&fs, k) * c.w(r))
        },
    ));
    e.push(def("FIB-BINOM-1-P", G, "sk", "sum_j (-1)^j C(k,j) F(s-1)^(k-j) W(sj) = (-1)^k F(s)^k W(k)").order(2).int(
        |c, p| {
            let Point { s, k, .. } = p;
            let row = binomial_row(k as u32);
            let (fs, fsm) = (c.u(s), c.u(s - 1));
            let lhs = sum(0, k, |j| sgn(j) * choose(&row, j) * bpw(&fsm, k - j) * c.w(s * j));
            (lhs, sgn(k) * bpw(&fs, k) * c.w(k))
        },
    ));
    e.push(def("FIB-BINOM-2-P", G, "sk", "sum_j C(k,j) F(s-1)^(k-j) F(s)^j W(j) = W(sk)").order(2).int(|c, p| {
        let Point { s, k, .. } = p;
        let row = binomial_row(k as u32);
        let (fs, fsm) = (c.u(s), c.u(s - 1));
        let lhs = sum(0, k, |j| choose(&row, j) * bpw(&fsm, k - j) * bpw(&fs, j) * c.w(j));
        (lhs, c.w(s * k))
    }));
    e.push(def("FIB-BINOM-3-P", G, "sk", "sum_j (-1)^(k-j) C(k,j) F(s+1)^(k-j) W(sj) = F(s)^k W(-k)").order(2).int(
        |c, p| {
            let Point { s, k, .. } = p;
            let row = binomial_row(k as u32);
            let (fs, fs1) = (c.u(s), c.u(s + 1));
            let lhs = sum(0, k, |j| sgn(k - j) * choose(&row, j) * bpw(&fs1, k - j) * c.w(s * j));
            (lhs, bpw(&fs, k) * c.w(-k))
        },
    ));

    e.push(def("TRIB-BINOM-1", G, "rk", "sum_j (-1)^(k-j) C(k,j) 103^(k-j) 56^j W(r+16k+j) = W(r)").order(3).int(
        |c, p| {
            let Point { r, k, .. } = p;
            let row = binomial_row(k as u32);
            let lhs = sum(0, k, |j| sgn(k - j) * choose(&row, j) * pw(103, k - j) * pw(56, j) * c.w(r + 16 * k + j));
            (lhs, c.w(r))
        },
    ));
    e.push(def("TRIB-BINOM-2", G, "rk", "sum_j 103^j C(k,j) W(r-17k+16j) = 56^k W(r)").order(3).int(|c, p| {
        let Point { r, k, .. } = p;
        let row = binomial_row(k as u32);
        (sum(0, k, |j| pw(103, j) * choose(&row, j) * c.w(r - 17 * k + 16 * j)), pw(56, k) * c.w(r))
    }));
    e.push(def("TRIB-BINOM-3", G, "rk", "sum_j (-1)^j C(k,j) 56^j W(r-16k+17j) = (-103)^k W(r)").order(3).int(
        |c, p| {
            let Point { r, k, .. } = p;
            let row = binomial_row(k as u32);
            let lhs = sum(0, k, |j| sgn(j) * choose(&row, j) * pw(56, j) * c.w(r - 16 * k + 17 * j));
            (lhs, pw(-103, k) * c.w(r))
        },
    ));
    e.push(def("TRIB-BINOM-1-P", G, "k", "sum_j (-1)^(k-j) C(k,j) 103^(k-j) 56^j W(j) = W(-16k)").order(3).int(
        |c, p| {
            let k = p.k;
            let row = binomial_row(k as u32);
            let lhs = sum(0, k, |j| sgn(k - j) * choose(&row, j) * pw(103, k - j) * pw(56, j) * c.w(j));
            (lhs, c.w(-16 * k))
        },
    ));
    e.push(def("TRIB-BINOM-2-P", G, "k", "sum_j 103^j C(k,j) W(16j) = 56^k W(17k)").order(3).int(|c, p| {
        let k = p.k;
        let row = binomial_row(k as u32);
        (sum(0, k, |j| pw(103, j) * choose(&row, j) * c.w(16 * j)), pw(56, k) * c.w(17 * k))
    }));
    e.push(def("TRIB-BINOM-3-P", G, "k", "sum_j (-1)^j C(k,j) 56^j W(17j) = (-103)^k W(16k)").order(3).int(|c, p| {
        let k = p.k;
        let row = binomial_row(k as u32);
        (sum(0, k, |j| sgn(j) * choose(&row, j) * pw(56, j) * c.w(17 * j)), pw(-103, k) * c.w(16 * k))
    }));
}

fn f4(exp: i64) -> BigRational {
    qpow(&q(int(4)), exp)
}

/// Sum over `0 <= t <= j <= k` of `C(k,j) C(j,t) f(j, t)`.
fn double_sum(k: i64, mut f: impl FnMut(i64, i64) -> BigRational) -> BigRational {
    let outer = binomial_row(k as u32);
    let mut acc = BigRational::zero();
    for j in 0..=k {
        let inner = binomial_row(j as u32);
        for t in 0..=j {
            acc += q(&outer[j as usize] * &inner[t as usize]) * f(j, t);
        }
    }
    acc
}

fn double_binomial_group(e: &mut Vec<IdentityDescriptor>) {
    use Group::DoubleBinomial as G;
    e.push(def("DBL-1", G, "rk", "sum_{j,t} (-1)^(j+t) C(k,j) C(j,t) 4^j W(r-(2n+2)k+2nj+t) = W(r)").rat(|c, p| {
        let Point { n, r, k, .. } = p;
        let lhs = double_sum(k, |j, t| q(sgn(j + t) * pw(4, j)) * q(c.w(r - (2 * n + 2) * k + 2 * n * j + t)));
        (lhs, q(c.w(r)))
    }));
    e.push(def("DBL-2", G, "rk", "sum_{j,t} (-4)^(k-j) C(k,j) C(j,t) 4^t W(r-2k-2nj+(2n+1)t) = W(r)").rat(|c, p| {
        let Point { n, r, k, .. } = p;
        let lhs = double_sum(k, |j, t| q(pw(-4, k - j) * pw(4, t)) * q(c.w(r - 2 * k - 2 * n * j + (2 * n + 1) * t)));
        (lhs, q(c.w(r)))
    }));
    e.push(def("DBL-3", G, "rk", "sum_{j,t} (-1)^t C(k,j) C(j,t) 4^(k-j+t) W(r-k-(2n+1)j+2nt) = W(r)").rat(|c, p| {
        let Point { n, r, k, .. } = p;
        let lhs = double_sum(k, |j, t| q(sgn(t) * pw(4, k - j + t)) * q(c.w(r - k - (2 * n + 1) * j + 2 * n * t)));
        (lhs, q(c.w(r)))
    }));
    e.push(def("DBL-4", G, "rk", "sum_{j,t} (-1)^(j-k) C(k,j) C(j,t) 4^(j-k-t) W(r-(2n+1)k+2nj+2t) = W(r)").rat(
        move |c, p| {
            let Point { n, r, k, .. } = p;
            let lhs =
                double_sum(k, |j, t| q(sgn(j - k)) * f4(j - k - t) * q(c.w(r - (2 * n + 1) * k + 2 * n * j + 2 * t)));
            (lhs, q(c.w(r)))
        },
    ));
    e.push(def("DBL-5", G, "rk", "sum_{j,t} (-1)^t C(k,j) C(j,t) 4^(j-k-t) W(r-2nk+(2n+1)j+t) = W(r)").rat(|c, p| {
        let Point { n, r, k, .. } = p;
        let lhs = double_sum(k, |j, t| q(sgn(t)) * f4(j - k - t) * q(c.w(r - 2 * n * k + (2 * n + 1) * j + t)));
        (lhs, q(c.w(r)))
    }));
    e.push(
        def("DBL-5-PRINTED", G, "rk", "sum_{j,t} (-1)^t C(k,j) C(j,t) 4^(j-k-t) W(r-2nk+j+t) = W(r)")
            .reading(DBL5_QUESTION)
            .rat(|c, p| {
                let Point { n, r, k, .. } = p;
                let lhs = double_sum(k, |j, t| q(sgn(t)) * f4(j - k - t) * q(c.w(r - 2 * n * k + j + t)));
                (lhs, q(c.w(r)))
            }),
    );
    e.push(def("DBL-6", G, "rk", "sum_{j,t} (-1)^(j+t) C(k,j) C(j,t) 4^(k-t) W(r+2nk+j+t) = W(r)").rat(|c, p| {
        let Point { n, r, k, .. } = p;
        let lhs = double_sum(k, |j, t| q(sgn(j + t) * pw(4, k - t)) * q(c.w(r + 2 * n * k + j + t)));
        (lhs, q(c.w(r)))
    }));

    // the other five recurrences, each through all six variants of the lemma
    for (idx, name) in ["K1-1", "K1-2", "K1-3", "K2-1", "K2-2"].into_iter().enumerate() {
        for variant in 1..=6u8 {
            e.push(
                def(
                    format!("DBL-{name}-{variant}"),
                    G,
                    "rk",
                    format!("double binomial lemma variant {variant} applied to REC-{name}"),
                )
                .rat(move |c, p| double_binomial_sides(c, p, idx, variant)),
            );
        }
    }
}
