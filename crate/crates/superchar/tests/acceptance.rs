//! Acceptance harness: one PASS/FAIL line per criterion. Every comparison is exact.

mod props;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use superchar::chars::comb::TriangleReading;
use superchar::chars::factor::components;
use superchar::chars::{
    comb_value, general_value, left_orbit_exponent, path_value, triangle_degree_exponent, un_degree_exponent,
    OrbitSizeStrategy, Orientation, ORIENTATION,
};
use superchar::oracle::{verify_u3f2_literal, Oracle, DEFAULT_BUDGET};
use superchar::reps::{
    canonical_form, char_comb_to_path, class_comb_to_path, enumerate_labels, parse_arcs, render_arcs, LabelKind,
    RepStyle,
};
use superchar::restrict::{reindex, restrict_step, restrict_un, restrict_un_alt, Decomposition, Embedding};
use superchar::{CycNumber, Field, FieldScalar, Matrix, PatternPoset};

/// `(q, n)` pairs of the master range; every `m` in `0..=n` is swept.
const RANGE: [(u32, usize); 7] = [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4), (3, 4), (2, 5)];

fn cases() -> impl Iterator<Item = (Field, usize, usize, PatternPoset)> {
    RANGE.into_iter().flat_map(|(q, n)| {
        (0..=n).map(move |m| (Field::new(q, 1).unwrap(), n, m, PatternPoset::interpolating(n, m).unwrap()))
    })
}

fn report(k: usize, name: &str, passed: bool, start: Instant, detail: &str) {
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("{tag} criterion {k}: {name} [{detail}; {:.2} s]", start.elapsed().as_secs_f64());
}

fn pow_q(q: u32, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

/// Exact agreement counts, with the first disagreement kept for the report.
#[derive(Default)]
struct Tally {
    total: usize,
    bad: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.bad += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.bad += other.bad;
        self.first = self.first.or(other.first);
        self
    }

    fn summary(&self, unit: &str) -> String {
        let mut s = format!("{} {unit}, {} mismatches", self.total, self.bad);
        if let Some(w) = &self.first {
            s.push_str(&format!("; first: {w}"));
        }
        s
    }
}

fn criterion_1() {
    let start = Instant::now();
    let mut tally = Tally::default();
    for (f, n, m, p) in cases() {
        let oracle = Oracle::new(&f, &p);
        let chars = enumerate_labels(&f, &p, RepStyle::Comb, LabelKind::Character).unwrap();
        let classes = enumerate_labels(&f, &p, RepStyle::Comb, LabelKind::Class).unwrap();
        let class_paths: Vec<Matrix> = classes.iter().map(|x| class_comb_to_path(&f, x)).collect();
        let t = chars
            .par_iter()
            .map(|lam| {
                let mut t = Tally::default();
                let truth = oracle.definitional_char_many(lam, &classes).unwrap();
                let lam_path = char_comb_to_path(&f, lam);
                for ((x, xp), want) in classes.iter().zip(&class_paths).zip(&truth) {
                    let g = general_value(&f, &p, lam, x, &OrbitSizeStrategy::Rank).unwrap().value;
                    let c = comb_value(&f, m, &p, lam, x).unwrap().value;
                    let pv = path_value(&f, m, &p, &lam_path, xp).unwrap().value;
                    t.check(&g == want && &c == want && &pv == want, || {
                        format!(
                            "q={} n={n} m={m} lambda={} u-1={}: general {g}, comb {c}, path {pv}, oracle {want}",
                            f.q(),
                            render_arcs(&f, lam),
                            render_arcs(&f, x)
                        )
                    });
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        tally = tally.merge(t);
    }
    report(
        1,
        "general == comb == path == oracle on every label pair, n<=4 q in {2,3} and n=5 q=2, all m",
        tally.bad == 0,
        start,
        &tally.summary("pairs"),
    );
}

fn criterion_2() {
    let start = Instant::now();
    let (mut groups, mut failed, mut b_checked) = (0, Vec::new(), 0);
    for (f, n, m, p) in cases() {
        let r = Oracle::new(&f, &p).verify_axioms().unwrap();
        groups += 1;
        if r.axiom_b.is_some() {
            b_checked += 1;
        }
        if !r.passed() || r.axiom_b.is_none() {
            failed.push(format!("q={} n={n} m={m}", f.q()));
        }
    }
    let literal = verify_u3f2_literal();
    let literal_ok = literal.as_ref().map(|owners| owners.len() == 5).unwrap_or(false);
    let detail = format!(
        "(a), (b), (d) and the (c) surrogate on {groups} groups, (b) by conjugacy classes on {b_checked}; \
         literal (c) on U_3(F_2): {}; failing groups: {failed:?}",
        match &literal {
            Ok(owners) => format!("each irreducible lies in exactly one supercharacter {owners:?}"),
            Err(e) => e.to_string(),
        }
    );
    report(2, "supercharacter theory axioms", failed.is_empty() && literal_ok, start, &detail);
}

fn criterion_3() {
    let start = Instant::now();
    let mut product = Tally::default();
    let mut literal = Tally::default();
    let mut corrected = Tally::default();
    for (f, n, m, p) in cases() {
        let oracle = Oracle::new(&f, &p);
        let bfs_exponent = |lam: &Matrix| {
            let size = oracle.left_orbit_size(lam).unwrap();
            let e = (0..=p.positions().len()).find(|&e| pow_q(f.q(), e) == BigInt::from(size));
            e.map(|e| e as i64).unwrap_or(-1)
        };
        if m == 0 {
            for lam in enumerate_labels(&f, &p, RepStyle::UnCanonical, LabelKind::Character).unwrap() {
                let e = bfs_exponent(&lam);
                product.check(un_degree_exponent(&lam) as i64 == e, || {
                    format!("q={} n={n} {}", f.q(), render_arcs(&f, &lam))
                });
            }
        }
        for lam in enumerate_labels(&f, &p, RepStyle::Comb, LabelKind::Character).unwrap() {
            let e = bfs_exponent(&lam);
            let by =
                |r: TriangleReading| components(&lam).iter().map(|t| triangle_degree_exponent(t, m, r)).sum::<i64>();
            let (lit, cor) = (by(TriangleReading::Literal), by(TriangleReading::Corrected));
            literal.check(lit == e, || {
                format!("q={} n={n} m={m} {}: printed exponent {lit}, BFS {e}", f.q(), render_arcs(&f, &lam))
            });
            corrected.check(cor == e, || format!("q={} n={n} m={m} {}", f.q(), render_arcs(&f, &lam)));
        }
    }
    let detail = format!(
        "U_n product formula vs BFS: {}. Printed single-component formula vs BFS: {}. \
         With leading exponent l_s - max(m,1) - 1 instead of l_s - m - 2: {}",
        product.summary("labels"),
        literal.summary("labels"),
        corrected.summary("labels")
    );
    report(3, "degree formulas equal BFS orbit sizes", product.bad == 0 && literal.bad == 0, start, &detail);
}

fn terms_of(d: &Decomposition) -> BTreeMap<Matrix, u64> {
    d.terms().map(|(k, c)| (k.clone(), c)).collect()
}

fn criterion_4() {
    let start = Instant::now();
    let f = Field::new(2, 1).unwrap();
    let lam = parse_arcs(&f, 6, "1~5|2~6|3~4").unwrap();
    let d = restrict_un(&f, &lam).unwrap();
    let chain5 = PatternPoset::chain(5);
    let want: BTreeMap<Matrix, u64> = ["5|2~6|3~4", "2~6|3~4~5", "2~6|3~5|4"]
        .iter()
        .map(|s| {
            let full = parse_arcs(&f, 6, s).unwrap();
            let small = reindex(&full, Embedding::FirstRow);
            (canonical_form(&f, &small, &chain5, RepStyle::UnCanonical, LabelKind::Character).unwrap(), 2)
        })
        .collect();
    let got = terms_of(&d);
    let rendered: Vec<String> = d.render(&f).iter().map(|(c, l)| format!("{c} * {l}")).collect();
    report(4, "three-arc restriction at q=2, n=6", got == want, start, &format!("got {rendered:?}"));
}

/// Oracle coefficients keyed by normal forms on `target` after `map`.
fn oracle_terms(
    f: &Field,
    group: &Oracle,
    sub: &Oracle,
    lam: &Matrix,
    target: &PatternPoset,
    style: RepStyle,
    map: impl Fn(&Matrix) -> Matrix,
) -> BTreeMap<Matrix, BigRational> {
    group
        .restriction_coefficients(lam, sub)
        .unwrap()
        .into_iter()
        .map(|(mu, c)| (canonical_form(f, &map(&mu), target, style, LabelKind::Character).unwrap(), c))
        .collect()
}

fn degree_of(f: &Field, poset: &PatternPoset, lam: &Matrix) -> BigInt {
    pow_q(f.q(), left_orbit_exponent(f, poset, lam))
}

fn conserves(f: &Field, upper: &PatternPoset, lam: &Matrix, d: &Decomposition) -> bool {
    let total: BigInt = d.terms().map(|(mu, c)| BigInt::from(c) * degree_of(f, &d.poset, mu)).sum();
    total == degree_of(f, upper, lam) && d.terms().all(|(_, c)| c > 0)
}

fn criterion_5() {
    let start = Instant::now();
    let mut steps = Tally::default();
    let mut full = Tally::default();
    for (f, n, m, lower) in cases() {
        if m == 0 {
            continue;
        }
        let upper = PatternPoset::interpolating(n, m - 1).unwrap();
        let (big, small) = (Oracle::new(&f, &upper), Oracle::new(&f, &lower));
        for lam in enumerate_labels(&f, &upper, RepStyle::Path, LabelKind::Character).unwrap() {
            let d = restrict_step(&f, &lam, m).unwrap();
            let want = oracle_terms(&f, &big, &small, &lam, &lower, RepStyle::Path, Matrix::clone);
            steps.check(d.as_rationals() == want && conserves(&f, &upper, &lam, &d), || {
                format!("q={} n={n} step {m} {}", f.q(), render_arcs(&f, &lam))
            });
        }
    }
    for (q, n) in RANGE {
        let f = Field::new(q, 1).unwrap();
        let chain = PatternPoset::chain(n);
        let target = PatternPoset::chain(n - 1);
        let big = Oracle::new(&f, &chain);
        let first_row = Oracle::new(&f, &PatternPoset::interpolating(n, n).unwrap());
        let last_col = Oracle::new(&f, &PatternPoset::last_removed(n));
        for lam in enumerate_labels(&f, &chain, RepStyle::UnCanonical, LabelKind::Character).unwrap() {
            for (e, sub, d) in [
                (Embedding::FirstRow, &first_row, restrict_un(&f, &lam).unwrap()),
                (Embedding::LastColumn, &last_col, restrict_un_alt(&f, &lam).unwrap()),
            ] {
                let want = oracle_terms(&f, &big, sub, &lam, &target, RepStyle::UnCanonical, |mu| reindex(mu, e));
                full.check(d.as_rationals() == want && conserves(&f, &chain, &lam, &d), || {
                    format!("q={q} n={n} {} {}", e.name(), render_arcs(&f, &lam))
                });
            }
        }
    }
    let detail = format!(
        "restrict_step vs oracle inner products: {}; U_n -> U_(n-1) (both embeddings) vs oracle: {}; \
         degree conserved and coefficients positive integers in every case",
        steps.summary("restrictions"),
        full.summary("restrictions")
    );
    report(5, "restriction sweep", steps.bad == 0 && full.bad == 0, start, &detail);
}

fn criterion_6() {
    let start = Instant::now();
    let mut linear = Tally::default();
    let mut long_arc = Tally::default();
    for (q, n) in [(2u32, 4usize), (2, 5), (3, 4)] {
        let f = Field::new(q, 1).unwrap();
        let chain = PatternPoset::chain(n);
        let target = PatternPoset::chain(n - 1);
        for lam in enumerate_labels(&f, &chain, RepStyle::UnCanonical, LabelKind::Character).unwrap() {
            if !lam.support().iter().all(|&(i, j)| j == i + 1) {
                continue;
            }
            let want = BTreeMap::from([(reindex(&lam, Embedding::FirstRow), 1)]);
            linear.check(terms_of(&restrict_un(&f, &lam).unwrap()) == want, || {
                format!("q={q} n={n} {}", render_arcs(&f, &lam))
            });
        }
        let arc = Matrix::from_entries(n, &[((1, n), FieldScalar::ONE)]);
        let want: BTreeMap<Matrix, u64> = enumerate_labels(&f, &target, RepStyle::UnCanonical, LabelKind::Character)
            .unwrap()
            .into_iter()
            .filter(|mu| mu.support().iter().all(|&(_, j)| j == n - 1))
            .map(|mu| (mu, 1))
            .collect();
        long_arc.check(terms_of(&restrict_un(&f, &arc).unwrap()) == want, || format!("q={q} n={n}"));
    }
    let detail = format!(
        "linear characters restrict to the same functional without its row-1 arc: {}; \
         1~n restricts to the sum of all labels supported in the last column with coefficient 1: {}",
        linear.summary("labels"),
        long_arc.summary("cases")
    );
    report(6, "linear characters and the long arc", linear.bad == 0 && long_arc.bad == 0, start, &detail);
}

/// `u` and `lambda` of the n = 7, m = 4 example with entries `a, d, e, b, c` and `x, y, z`.
fn worked_example(v: [u32; 8]) -> (Matrix, Matrix) {
    let [a, d, e, b, c, x, y, z] = v.map(FieldScalar);
    let u = Matrix::from_entries(7, &[((1, 5), a), ((2, 6), d), ((3, 4), e), ((4, 5), b), ((4, 6), c)]);
    let lam = Matrix::from_entries(7, &[((1, 7), x), ((2, 7), y), ((4, 5), z)]);
    (lam, u)
}

fn oriented(v: CycNumber) -> CycNumber {
    match ORIENTATION {
        Orientation::AsStated => v,
        Orientation::Conjugate => v.conj(),
    }
}

/// `(bag(d) bag(y), theta(bz))` for the example's entries.
fn example_data(f: &Field, v: [u32; 8]) -> (FieldScalar, CycNumber) {
    let [a, d, _, b, c, x, y, z] = v.map(FieldScalar);
    let bag_d = f.mul(f.div(d, f.neg(c)), f.div(b, f.neg(a)));
    let bag_y = f.div(y, f.neg(x));
    (f.mul(bag_d, bag_y), f.theta(f.mul(b, z)))
}

fn unit_tuples(q: u32) -> Vec<[u32; 8]> {
    let all = (0..8).fold(vec![vec![]], |acc: Vec<Vec<u32>>, _| {
        acc.into_iter().flat_map(|t| (1..q).map(move |u| [t.clone(), vec![u]].concat())).collect()
    });
    all.into_iter().map(|t| t.try_into().unwrap()).collect()
}

fn criterion_7() {
    let start = Instant::now();
    let p = PatternPoset::interpolating(7, 4).unwrap();
    let mut printed = Tally::default();
    let mut measured = Tally::default();
    let mut general = Tally::default();
    for q in [2u32, 3, 5] {
        let f = Field::new(q, 1).unwrap();
        let scale = |e: usize| BigRational::from_integer(pow_q(q, e));
        let tuples: Vec<[u32; 8]> = if q == 5 {
            // a, c, x in {1, 2}; d, y, b, z over all units; e = 1.
            let mut out = Vec::new();
            for a in 1..3 {
                for c in 1..3 {
                    for x in 1..3 {
                        for t in 0..256u32 {
                            let [d, y, b, z] = [t % 4, (t / 4) % 4, (t / 16) % 4, t / 64].map(|k| k + 1);
                            out.push([a, d, 1, b, c, x, y, z]);
                        }
                    }
                }
            }
            out
        } else {
            unit_tuples(q)
        };
        let results: Vec<(bool, bool, Option<bool>, String)> = tuples
            .par_iter()
            .map(|&v| {
                let (lam, u) = worked_example(v);
                let got = path_value(&f, 4, &p, &lam, &u).unwrap().value;
                let (bags, th) = example_data(&f, v);
                let lit =
                    if bags == FieldScalar::ONE { CycNumber::zero(q) } else { oriented(th.clone()).scale(&scale(1)) };
                let meas =
                    if bags == f.neg(FieldScalar::ONE) { oriented(th).scale(&scale(2)) } else { CycNumber::zero(q) };
                let gen = (q <= 3).then(|| {
                    let g = general_value(&f, &p, &lam, &u, &OrbitSizeStrategy::Given(q.pow(4) as u64)).unwrap();
                    g.value == got
                });
                (got == lit, got == meas, gen, format!("q={q} {v:?}: path {got}, printed {lit}"))
            })
            .collect();
        for (lit_ok, meas_ok, gen_ok, what) in results {
            printed.check(lit_ok, || what.clone());
            measured.check(meas_ok, || what.clone());
            if let Some(ok) = gen_ok {
                general.check(ok, || what);
            }
        }
    }
    let f2 = Field::new(2, 1).unwrap();
    let (lam, u) = worked_example([1; 8]);
    let oracle_q2 = Oracle::new(&f2, &p).definitional_char(&lam, &u).unwrap();
    let detail = format!(
        "printed value q^4 theta(bz)/q^3, zero iff bag(d)bag(y) = 1: {}. \
         Measured: path == general (orbit size q^4 from the degree formula) on {}; \
         path == q^2 theta(bz), zero unless bag(d)bag(y) = -1: {}; oracle at q=2, all entries 1: {oracle_q2}",
        printed.summary("assignments"),
        general.summary("assignments"),
        measured.summary("assignments"),
    );
    report(7, "n=7, m=4 worked example", printed.bad == 0, start, &detail);
}

fn criterion_8() {
    let start = Instant::now();
    let f = Field::new(2, 1).unwrap();
    let chain = PatternPoset::chain(4);
    let labels = enumerate_labels(&f, &chain, RepStyle::UnCanonical, LabelKind::Character).unwrap();
    let witnesses: Vec<&Matrix> = labels
        .iter()
        .filter(|lam| terms_of(&restrict_un(&f, lam).unwrap()) != terms_of(&restrict_un_alt(&f, lam).unwrap()))
        .collect();
    let detail = match witnesses.first() {
        Some(lam) => format!(
            "{} of {} labels differ; e.g. {}: first-row {:?}, last-column {:?}",
            witnesses.len(),
            labels.len(),
            render_arcs(&f, lam),
            restrict_un(&f, lam).unwrap().render(&f),
            restrict_un_alt(&f, lam).unwrap().render(&f)
        ),
        None => format!("all {} labels agree", labels.len()),
    };
    report(8, "restriction depends on the embedding at q=2, n=4", !witnesses.is_empty(), start, &detail);
}

fn criterion_9() {
    let start = Instant::now();
    let fits = props::GROUPS.iter().enumerate().all(|(i, _)| {
        let (f, p) = props::group(i);
        Oracle::new(&f, &p).space_size() <= DEFAULT_BUDGET
    });
    let runs = [
        ("canonicalization constancy on orbits", props::canonical_form_is_constant_on_orbits(64)),
        ("BFS generator-order independence", props::orbit_partition_ignores_generator_order(64)),
        ("theta-sum vanishing", props::theta_sums_vanish(256)),
        ("cyclotomic ring axioms", props::cyclotomic_ring_axioms(256)),
    ];
    let failed: Vec<String> = runs.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    let budget_ok = DEFAULT_BUDGET <= 1 << 20 && fits;
    let detail = format!(
        "{} properties, oracle budget {} (<= 2^20: {budget_ok}); failures: {failed:?}",
        runs.len(),
        DEFAULT_BUDGET
    );
    report(9, "property suite", failed.is_empty() && budget_ok, start, &detail);
}

fn main() {
    let start = Instant::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    println!("acceptance harness finished in {:.1} s", start.elapsed().as_secs_f64());
}
