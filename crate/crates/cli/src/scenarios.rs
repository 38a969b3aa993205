use std::sync::Arc;

use bfk_core::bisets::{
    compose, factorize, faithful_idempotent, faithful_idempotent_center, hom_group, identity,
    referee_pair, BisetMorphism, Method,
};
use bfk_core::burnside::kernel_k;
use bfk_core::groups::{build_group, direct_product, standard_two_groups, Group};
use bfk_core::rational::*;
use bfk_core::units::coker_report;
use bfk_core::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub p: u32,
    pub max_order: Option<usize>,
    pub seed: u64,
    pub enumerate: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub scenario: String,
    pub params: Params,
    pub passed: bool,
    pub details: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

type Outcome = (bool, Value, Vec<String>);

pub struct Scenario {
    pub id: &'static str,
    pub anchor: &'static str,
    pub default_max_order: Option<usize>,
    run: fn(&Params) -> Result<Outcome>,
}

pub const SCENARIOS: &[Scenario] = &[
    Scenario {
        id: "factorization",
        anchor: "factorization of transitive bisets",
        default_max_order: Some(64),
        run: factorization,
    },
    Scenario {
        id: "f-idempotents",
        anchor: "faithful idempotents f_N",
        default_max_order: Some(16),
        run: idempotents,
    },
    Scenario {
        id: "compose-oracle",
        anchor: "orbit and Mackey composition agree",
        default_max_order: Some(32),
        run: compose_oracle,
    },
    Scenario {
        id: "delta-nul",
        anchor: "delta^op kills every gamma_Y",
        default_max_order: None,
        run: delta_nul,
    },
    Scenario {
        id: "geometric",
        anchor: "projective plane patterns P - L = delta",
        default_max_order: None,
        run: geometric,
    },
    Scenario {
        id: "y-identity",
        anchor: "(X^3/Y) o (delta x delta) = delta",
        default_max_order: None,
        run: y_identity,
    },
    Scenario {
        id: "brat",
        anchor: "B/B_delta is rational",
        default_max_order: Some(16),
        run: brat,
    },
    Scenario {
        id: "caract",
        anchor: "characterization of rational functors",
        default_max_order: Some(16),
        run: caract,
    },
    Scenario {
        id: "shift-rational",
        anchor: "shifts of rational functors are rational",
        default_max_order: Some(8),
        run: shift_rational,
    },
    Scenario {
        id: "mur-kill",
        anchor: "rational functors kill B_delta",
        default_max_order: None,
        run: mur_kill,
    },
    Scenario {
        id: "prn1-ranks",
        anchor: "faithful K of normal p-rank 1 groups",
        default_max_order: None,
        run: prn1_ranks,
    },
    Scenario {
        id: "kmod-dims",
        anchor: "basis of K/B_delta",
        default_max_order: Some(32),
        run: kmod_dims,
    },
    Scenario {
        id: "coker-dims",
        anchor: "dim K/B_delta = d(P)",
        default_max_order: Some(32),
        run: coker_dims,
    },
    Scenario {
        id: "units-report",
        anchor: "Burnside units and the sign exponential",
        default_max_order: Some(16),
        run: units_report,
    },
];

const ALIASES: &[(&str, &str)] = &[
    ("mur", "mur-kill"),
    ("compose-oracle-agreement", "compose-oracle"),
    ("idempotents", "f-idempotents"),
];

pub fn find(id: &str) -> Option<&'static Scenario> {
    let id = ALIASES
        .iter()
        .find(|(a, _)| *a == id)
        .map_or(id, |(_, t)| t);
    SCENARIOS.iter().find(|s| s.id == id)
}

pub fn run(s: &Scenario, mut params: Params) -> Result<Report> {
    params.max_order = params.max_order.or(s.default_max_order);
    let (passed, details, lines) = (s.run)(&params)?;
    Ok(Report {
        scenario: s.id.to_string(),
        params,
        passed,
        details,
        lines,
    })
}

fn g(name: &str) -> Result<Arc<Group>> {
    build_group(name)
}

fn cap(params: &Params) -> usize {
    params.max_order.unwrap_or(usize::MAX)
}

fn odd_universe(p: u32) -> Vec<String> {
    if p == 3 {
        ["C3", "C9", "E9", "C27", "X3"].map(String::from).to_vec()
    } else {
        vec![format!("C{p}"), format!("E{p}_2"), format!("X{p}")]
    }
}

/// Catalog `p`-groups of order at most `max`.
pub fn universe(p: u32, max: usize) -> Result<Vec<Arc<Group>>> {
    let names: Vec<String> = if p == 2 {
        standard_two_groups(max.min(32))
            .into_iter()
            .map(String::from)
            .collect()
    } else {
        let mut v = vec!["1".to_string()];
        v.extend(odd_universe(p));
        v
    };
    names
        .iter()
        .map(|n| g(n))
        .filter(|r| r.as_ref().map_or(true, |x| x.order() <= max))
        .collect()
}

fn mixed_universe(max: usize) -> Result<Vec<Arc<Group>>> {
    let mut u = universe(2, max)?;
    u.extend(universe(3, max)?.into_iter().filter(|x| !x.is_trivial()));
    Ok(u)
}

fn compatible(a: &Group, b: &Group) -> bool {
    a.is_trivial() || b.is_trivial() || a.prime() == b.prime()
}

fn factorization(params: &Params) -> Result<Outcome> {
    let max = cap(params);
    let u = mixed_universe(max)?;
    let (mut classes, mut bad) = (0usize, Vec::new());
    for h in &u {
        for gg in &u {
            if h.order() * gg.order() > max || !compatible(h, gg) {
                continue;
            }
            for c in direct_product(h, gg)?.classes() {
                classes += 1;
                if factorize(h, gg, &c.rep)?.recompose(h, gg)?
                    != BisetMorphism::transitive(gg, h, &c.rep)?
                {
                    bad.push(format!("{}x{}", h.name(), gg.name()));
                }
            }
        }
    }
    let line = format!("{classes} subgroup classes, {} mismatches", bad.len());
    Ok((
        bad.is_empty(),
        json!({"classes": classes, "mismatches": bad}),
        vec![line],
    ))
}

fn idempotents(params: &Params) -> Result<Outcome> {
    let mut u = universe(2, cap(params))?;
    for n in ["C3", "C5", "C7", "C9", "E9", "C11", "C13"] {
        let x = g(n)?;
        if x.order() <= cap(params) {
            u.push(x);
        }
    }
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for gr in &u {
        let fs = gr
            .normal_subgroups()
            .iter()
            .map(|n| faithful_idempotent(gr, n))
            .collect::<Result<Vec<_>>>()?;
        let (mut idem, mut orth) = (true, true);
        let mut sum = BisetMorphism::zero(gr, gr)?;
        for (i, f) in fs.iter().enumerate() {
            for (j, e) in fs.iter().enumerate() {
                let fe = compose(f, e, Method::Mackey)?;
                if i == j {
                    idem &= &fe == f;
                } else {
                    orth &= fe.is_zero();
                }
            }
            sum = sum.add(f)?;
        }
        let sums = sum == identity(gr)?;
        let center =
            faithful_idempotent_center(gr)? == faithful_idempotent(gr, &gr.trivial_subgroup())?;
        let ok = idem && orth && sums && center;
        all &= ok;
        lines.push(format!(
            "{:<8} normal={:<3} idempotent={idem} orthogonal={orth} sum=id:{sums} center formula:{center}",
            gr.name(),
            fs.len()
        ));
        rows.push(json!({"group": gr.name(), "normal": fs.len(), "idempotent": idem, "orthogonal": orth, "sum_is_identity": sums, "center_formula": center}));
    }
    Ok((all, Value::Array(rows), lines))
}

fn random_subgroup_of(hg: &Group, rng: &mut ChaCha8Rng) -> bfk_core::groups::Subgroup {
    let k = rng.gen_range(0..=3);
    let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..hg.order())).collect();
    hg.generated(&gens)
}

fn compose_oracle(params: &Params) -> Result<Outcome> {
    let max = cap(params);
    let u = mixed_universe(max)?;
    let (mut pairs, mut bad) = (0usize, 0usize);
    for a in &u {
        for b in &u {
            if a.order() * b.order() > max || !compatible(a, b) {
                continue;
            }
            let r = referee_pair(a, b)?;
            pairs += r.pairs;
            bad += r.disagreements.len();
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let pool = mixed_universe(16)?;
    let mut random = 0;
    while random < 100 {
        let gs: Vec<&Arc<Group>> = (0..3)
            .map(|_| &pool[rng.gen_range(0..pool.len())])
            .collect();
        if !(compatible(gs[0], gs[1]) && compatible(gs[1], gs[2]) && compatible(gs[0], gs[2]))
            || gs[0].order() * gs[1].order() > 256
            || gs[1].order() * gs[2].order() > 256
        {
            continue;
        }
        let (hu, hv) = (hom_group(gs[0], gs[1])?, hom_group(gs[1], gs[2])?);
        let u1 = BisetMorphism::transitive(gs[0], gs[1], &random_subgroup_of(&hu, &mut rng))?;
        let v1 = BisetMorphism::transitive(gs[1], gs[2], &random_subgroup_of(&hv, &mut rng))?;
        match compose(&v1, &u1, Method::Both) {
            Ok(_) => {}
            Err(Error::MethodDisagreement(_)) => bad += 1,
            Err(e) => return Err(e),
        }
        random += 1;
    }
    let line = format!("{pairs} exhaustive pairs, {random} random pairs, {bad} disagreements");
    Ok((
        bad == 0,
        json!({"pairs": pairs, "random_pairs": random, "disagreements": bad}),
        vec![line],
    ))
}

fn delta_nul(params: &Params) -> Result<Outcome> {
    let r = delta_nul_check(params.p)?;
    let mut lines = vec![format!(
        "delta^op o gamma_Y vanishes for {} of {} basis entries",
        r.gamma_products_vanish.iter().filter(|x| **x).count(),
        r.gamma_products_vanish.len()
    )];
    lines.extend(
        r.mackey
            .iter()
            .map(|m| format!("{} = {}  [{}]", m.left, m.expected, m.holds)),
    );
    Ok((r.passed, serde_json::to_value(&r).expect("report"), lines))
}

fn geometric(params: &Params) -> Result<Outcome> {
    let r = geometric_check(params.p)?;
    let lines = vec![
        format!(
            "{} points, {} lines, {} fixed points, {} fixed lines",
            r.points, r.lines, r.fixed_points, r.fixed_lines
        ),
        format!(
            "patterns found: {}; P - L = delta: {}",
            r.patterns_found, r.difference_is_delta
        ),
    ];
    Ok((r.passed, serde_json::to_value(&r).expect("report"), lines))
}

fn y_identity(params: &Params) -> Result<Outcome> {
    let r = if params.enumerate {
        y_identity_by_enumeration(params.p)?
    } else {
        y_identity_check(params.p)?
    };
    let lines = vec![
        format!(
            "method {}, |Y| = {} (expected {}), subgroup: {}",
            r.method, r.y_order, r.expected_order, r.y_is_subgroup
        ),
        format!(
            "composite equals delta: {}; equals -delta: {}; with I and J exchanged in Y: delta {}",
            r.equals_delta, r.equals_minus_delta, r.swapped_equals_delta
        ),
    ];
    Ok((r.passed, serde_json::to_value(&r).expect("report"), lines))
}

fn rational_universe(params: &Params) -> Result<Vec<Arc<Group>>> {
    universe(params.p, cap(params))
}

fn brat(params: &Params) -> Result<Outcome> {
    let f = make_quotient_bmod_bdelta(params.p);
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for p in rational_universe(params)? {
        let r = rationality_check(&f, &p)?;
        let ok = r.is_rational && r.other_basis_agrees != Some(false);
        all &= ok;
        lines.push(format!(
            "{:<8} rational={} kernel={:?} cokernel={:?} other basis={:?}",
            r.group,
            r.is_rational,
            invariants(&r.kernel.invariants()),
            invariants(&r.cokernel.invariants()),
            r.other_basis_agrees
        ));
        rows.push(json!({"group": r.group, "rational": r.is_rational, "other_basis_agrees": r.other_basis_agrees}));
    }
    Ok((all, Value::Array(rows), lines))
}

fn caract(params: &Params) -> Result<Outcome> {
    let f = make_quotient_bmod_bdelta(params.p);
    let r = caract_check(&f, &rational_universe(params)?)?;
    let lines = r
        .rows
        .iter()
        .map(|row| {
            format!(
                "{:<8} (i) {:?} (ii) {:?}",
                row.group, row.condition_i, row.condition_ii
            )
        })
        .collect();
    Ok((r.passed, serde_json::to_value(&r).expect("report"), lines))
}

fn shift_rational(params: &Params) -> Result<Outcome> {
    let h = g(&format!("C{}", params.p))?;
    let f = make_shift(&make_quotient_bmod_bdelta(params.p), &h);
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for p in rational_universe(params)? {
        let r = rationality_check(&f, &p)?;
        all &= r.is_rational;
        lines.push(format!(
            "{:<8} {} rational={}",
            r.group, r.functor, r.is_rational
        ));
        rows.push(json!({"group": r.group, "functor": r.functor, "rational": r.is_rational}));
    }
    Ok((all, Value::Array(rows), lines))
}

fn mur_kill(params: &Params) -> Result<Outcome> {
    let p = params.p;
    let one = Group::trivial();
    let (cp, cp2, x) = (
        g(&format!("C{p}"))?,
        g(&format!("C{}", p * p))?,
        g(&format!("X{p}"))?,
    );
    let f = make_quotient_bmod_bdelta(p);
    let mut reports = Vec::new();
    let mut ok = true;
    for (a, b) in [(&one, &x), (&cp, &cp), (&cp, &cp2)] {
        let r = mur_kill_check(&f, a, b)?;
        ok &= r.acting_nonzero == 0;
        reports.push(r);
    }
    let neg = mur_kill_check(&make_b(), &one, &x)?;
    ok &= neg.acting_nonzero > 0;
    reports.push(neg);
    let lines = reports
        .iter()
        .map(|r| {
            format!(
                "{:<10} {} -> {}: {} of {} generators act nonzero",
                r.functor, r.source, r.target, r.acting_nonzero, r.generators
            )
        })
        .collect();
    Ok((ok, serde_json::to_value(&reports).expect("report"), lines))
}

fn prn1_ranks(_: &Params) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut ok = true;
    for name in ["C8", "Q8", "Q16", "SD16", "D16"] {
        let r = rank1_faithful_kernel(name)?;
        ok &= r.rank == r.expected_rank && r.generators_match;
        rows.push(r);
    }
    let d16 = g("D16")?;
    let outside = !delta_r_in_b_delta(&d16)?;
    ok &= outside;
    let mut lines: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{:<6} rank {} (expected {}), generators match: {}",
                r.group, r.rank, r.expected_rank, r.generators_match
            )
        })
        .collect();
    lines.push(format!("delta_R outside B_delta(D16): {outside}"));
    Ok((
        ok,
        json!({"rows": rows, "delta_r_outside_b_delta": outside}),
        lines,
    ))
}

pub fn invariants(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_i64().expect("small invariant"))
        .collect()
}

pub fn kmod_json(k: &KModDelta) -> Value {
    json!({
        "group": k.group,
        "invariants": invariants(&k.invariants),
        "d": k.d,
        "images_form_basis": k.images_form_basis,
    })
}

pub fn kmod_passed(k: &KModDelta) -> bool {
    k.invariants.len() == k.d
        && k.invariants.iter().all(|x| *x == BigInt::from(2))
        && k.images_form_basis
}

fn kmod_dims(params: &Params) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for p in universe(2, cap(params))? {
        let k = k_mod_delta(&p)?;
        all &= kmod_passed(&k);
        lines.push(format!(
            "{:<8} K/B_delta = {:?}  d = {}  basis: {}",
            k.group,
            invariants(&k.invariants),
            k.d,
            k.images_form_basis
        ));
        rows.push(kmod_json(&k));
    }
    Ok((all, Value::Array(rows), lines))
}

fn coker_dims(params: &Params) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all = true;
    for p in universe(2, cap(params))? {
        let k = k_mod_delta(&p)?;
        let dim = k
            .invariants
            .iter()
            .filter(|x| *x % 2 == BigInt::from(0))
            .count();
        let ok = dim == k.d;
        all &= ok;
        lines.push(format!("{:<8} d = {}  dim K/B_delta = {dim}", k.group, k.d));
        rows.push(json!({"group": k.group, "d": k.d, "kmod_dim": dim}));
    }
    if params.p != 2 {
        for p in universe(params.p, cap(params))? {
            let equal = *b_delta(&p)? == kernel_k(&p);
            all &= equal;
            lines.push(format!("{:<8} K = B_delta: {equal}", p.name()));
            rows.push(json!({"group": p.name(), "k_equals_b_delta": equal}));
        }
    }
    Ok((all, Value::Array(rows), lines))
}

fn units_report(params: &Params) -> Result<Outcome> {
    let r = coker_report(&universe(2, cap(params))?)?;
    let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let mut lines = vec![format!(
        "{:<8} {:>6} {:>6} {:>3} {:>4}",
        "group", "|B^x|", "image", "d", "dim"
    )];
    lines.extend(r.rows.iter().map(|row| {
        format!(
            "{:<8} {:>6} {:>6} {:>3} {:>4}",
            row.group,
            show(row.units),
            show(row.image),
            row.d,
            row.kmod_dim
        )
    }));
    Ok((r.passed, serde_json::to_value(&r).expect("report"), lines))
}
