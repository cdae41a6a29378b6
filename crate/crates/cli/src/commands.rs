use std::io::Read as _;

use jordan_core::exactmat::{
    cyclotomic_poly, hermite_normal_form, power_is_unipotent, roots_of_unity_eigenvalues, smith_normal_form,
    split_cyclotomic, EigenvalueVerdict, IntMatrix, IntPolynomial,
};
use jordan_core::heis::{HeisGroup, HeisSubgroupData};
use jordan_core::numth::{self, eigen_modulus_bounds, k_max, parse_rational, RatInterval, EPSILON_DIGITS};
use jordan_core::quotient::{
    build_quotient_capped, decompose_normal_subgroup, heis_grid, kodaira_grid, sm_grid, spm_grid, verify_bound,
    BoundReport, GridRecord, HeisGridLimits, KodairaGridLimits, SmGridLimits, SpmGridLimits,
};
use jordan_core::suite::{Group, Suite};
use jordan_core::wang::{psi_automorphism, Center, WangGroup};
use jordan_core::wire;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::report::{CheckRecord, CliError};

/// What a handler hands back before the envelope is filled in.
#[derive(Default)]
pub struct Produced {
    pub result: Value,
    pub text: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

impl Produced {
    fn value(result: Value, text: impl Into<String>) -> Self {
        Produced { result, text: vec![text.into()], checks: Vec::new() }
    }
}

type Out = Result<Produced, CliError>;

/// Inline JSON if the argument starts with `{` or `[`, stdin for `-`, else a file path.
pub fn load(arg: &str) -> Result<Value, CliError> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::BadInput(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::BadInput(format!("cannot read {arg}: {e}")))?
    };
    Ok(wire::parse_text(&text)?)
}

fn compact(v: &Value) -> String {
    v.to_string()
}

fn matrix_lines(label: &str, m: &IntMatrix) -> Vec<String> {
    let mut out = vec![format!("{label}:")];
    out.extend(m.to_rows().iter().map(|r| format!("  {}", compact(&wire::int_list(r)))));
    out
}

fn poly(p: &IntPolynomial) -> Value {
    let desc: Vec<BigInt> = p.coeffs().iter().rev().cloned().collect();
    json!({ "coeffs": wire::int_list(&desc), "text": p.to_string() })
}

fn interval(iv: &RatInterval) -> Value {
    json!({ "lo": wire::rational(&iv.lo), "hi": wire::rational(&iv.hi), "certified_digits": iv.certified_digits() })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

// ---- mat ----

pub fn mat_det(input: &str) -> Out {
    let m = wire::parse_matrix(&load(input)?)?;
    if !m.is_square() {
        return Err(CliError::BadInput("matrix is not square".into()));
    }
    let d = m.det();
    Ok(Produced::value(wire::int(&d), d.to_string()))
}

pub fn mat_charpoly(input: &str) -> Out {
    let m = wire::parse_matrix(&load(input)?)?;
    if !m.is_square() {
        return Err(CliError::BadInput("matrix is not square".into()));
    }
    let p = m.char_poly();
    Ok(Produced::value(poly(&p), p.to_string()))
}

pub fn mat_snf(input: &str) -> Out {
    let m = wire::parse_matrix(&load(input)?)?;
    let f = smith_normal_form(&m);
    let inv = f.invariant_factors();
    let mut text = vec![format!("invariant factors: {}", join(&inv))];
    text.extend(matrix_lines("U", &f.u));
    text.extend(matrix_lines("D", &f.d));
    text.extend(matrix_lines("V", &f.v));
    let result = json!({
        "u": wire::matrix(&f.u),
        "d": wire::matrix(&f.d),
        "v": wire::matrix(&f.v),
        "invariant_factors": wire::int_list(&inv),
    });
    Ok(Produced { result, text, checks: Vec::new() })
}

pub fn mat_hnf(input: &str) -> Out {
    let m = wire::parse_matrix(&load(input)?)?;
    let (h, u) = hermite_normal_form(&m)?;
    let mut text = matrix_lines("H = A·U", &h);
    text.extend(matrix_lines("U", &u));
    Ok(Produced { result: json!({ "h": wire::matrix(&h), "u": wire::matrix(&u) }), text, checks: Vec::new() })
}

pub fn mat_cyclo(input: Option<&str>, order: Option<u64>) -> Out {
    match (input, order) {
        (None, Some(0)) => Err(CliError::BadInput("--order must be positive".into())),
        (None, Some(d)) => {
            let p = cyclotomic_poly(d);
            Ok(Produced::value(json!({ "order": d, "poly": poly(&p) }), format!("Φ_{d} = {p}")))
        }
        (Some(input), None) => {
            let m = wire::parse_matrix(&load(input)?)?;
            if !m.is_square() {
                return Err(CliError::BadInput("matrix is not square".into()));
            }
            let split = split_cyclotomic(&m.char_poly());
            let result = json!({
                "orders": split.orders,
                "residual": poly(&split.residual),
                "complete": split.is_complete(),
            });
            let text = vec![
                format!("cyclotomic factors: {}", if split.orders.is_empty() { "none".into() } else { join(&split.orders) }),
                format!("residual: {}", split.residual),
            ];
            Ok(Produced { result, text, checks: Vec::new() })
        }
        _ => Err(CliError::Usage("mat cyclo takes either a MATRIX or --order D".into())),
    }
}

pub fn mat_roots_of_unity(input: &str) -> Out {
    let m = wire::parse_matrix(&load(input)?)?;
    let verdict = roots_of_unity_eigenvalues(&m)?;
    let unipotent = power_is_unipotent(&m)?;
    let (all, orders, residual) = match &verdict {
        EigenvalueVerdict::All { orders } => (true, orders.clone(), None),
        EigenvalueVerdict::NotAll { orders, residual } => (false, orders.clone(), Some(residual)),
    };
    let result = json!({
        "all_roots_of_unity": all,
        "orders": orders,
        "residual": residual.map(poly),
        "power_unipotent": unipotent,
    });
    let text = vec![format!("all eigenvalues roots of unity: {}", if all { "yes" } else { "no" })];
    let check = CheckRecord::new(
        "cyclotomic split agrees with M^N unipotence",
        format!("split {all}, unipotent {unipotent}"),
        "equal verdicts",
        all == unipotent,
    );
    Ok(Produced { result, text, checks: vec![check] })
}

// ---- numth ----

pub fn numth_epsilon(degree: usize) -> Out {
    let cert = numth::epsilon(degree)?;
    let result = json!({
        "n": cert.n,
        "epsilon": wire::rational_with_decimal(&cert.epsilon, EPSILON_DIGITS),
        "mu_lower_bound": wire::rational_with_decimal(&cert.mu, EPSILON_DIGITS),
        "witness_poly": poly(&cert.witness_poly),
        "coeff_bounds": cert.coeff_bounds,
        "poly_count": cert.poly_count,
    });
    let text = vec![
        format!("epsilon({degree}) = {}", numth::format_decimal(&cert.epsilon, EPSILON_DIGITS)),
        format!("witness: {} ({} candidate polynomials)", cert.witness_poly, cert.poly_count),
    ];
    Ok(Produced { result, text, checks: Vec::new() })
}

pub fn numth_kmax(matrix: &str, eps: Option<&str>) -> Out {
    let m = wire::parse_matrix(&load(matrix)?)?;
    let eps = match eps {
        Some(s) => parse_rational(s).ok_or_else(|| CliError::BadInput(format!("--epsilon: {s:?} is not a rational")))?,
        None => numth::epsilon(m.nrows())?.epsilon.clone(),
    };
    let k = k_max(&m, &eps)?;
    let ann = eigen_modulus_bounds(&m, EPSILON_DIGITS)?;
    let result = json!({
        "k_max": k,
        "epsilon": wire::rational_with_decimal(&eps, EPSILON_DIGITS),
        "l_min": interval(&ann.l_min),
        "l_max": interval(&ann.l_max),
    });
    Ok(Produced::value(result, format!("k_max = {k} at epsilon {}", wire::rational(&eps).as_str().unwrap_or_default())))
}

// ---- heis ----

fn heis_group(r: &BigInt) -> Result<HeisGroup, CliError> {
    Ok(HeisGroup::new(r.clone())?)
}

fn element_out(x: &jordan_core::heis::HeisElement) -> Produced {
    let v = wire::heis(x);
    Produced::value(v.clone(), compact(&v))
}

pub fn heis_mul(r: &BigInt, x: &str, y: &str) -> Out {
    let h = heis_group(r)?;
    let (x, y) = (wire::parse_heis(&load(x)?)?, wire::parse_heis(&load(y)?)?);
    Ok(element_out(&h.mul(&x, &y)))
}

pub fn heis_inv(r: &BigInt, x: &str) -> Out {
    let h = heis_group(r)?;
    Ok(element_out(&h.inv(&wire::parse_heis(&load(x)?)?)))
}

pub fn heis_pow(r: &BigInt, x: &str, k: &BigInt) -> Out {
    let h = heis_group(r)?;
    Ok(element_out(&h.pow(&wire::parse_heis(&load(x)?)?, k)))
}

pub fn heis_word(r: &BigInt, word: &str) -> Out {
    let h = heis_group(r)?;
    Ok(element_out(&h.eval_word_str(word)?))
}

fn load_subgroup(s: &str) -> Result<HeisSubgroupData, CliError> {
    Ok(wire::parse_subgroup(&load(s)?)?)
}

pub fn heis_subgroup_index(s: &str) -> Out {
    let d = load_subgroup(s)?;
    let i = d.index();
    Ok(Produced::value(json!({ "index": wire::int(&i) }), format!("index {i}")))
}

pub fn heis_subgroup_type(s: &str) -> Out {
    let d = load_subgroup(s)?;
    let t = d.iso_type()?;
    Ok(Produced::value(json!({ "iso_type": wire::int(&t) }), format!("H({t})")))
}

pub fn heis_is_normal(s: &str) -> Out {
    let d = load_subgroup(s)?;
    let n = d.is_normal();
    Ok(Produced::value(json!({ "normal": n }), n.to_string()))
}

pub fn heis_contains(s: &str, x: &str) -> Out {
    let d = load_subgroup(s)?;
    let x = wire::parse_heis(&load(x)?)?;
    Ok(match d.contains(&x) {
        Some(w) => Produced::value(
            json!({ "contains": true, "witness": { "m": wire::int(&w.m), "n": wire::int(&w.n), "j": wire::int(&w.j) } }),
            format!("true (zeta^{} xi^{} d3^({}*{}))", w.m, w.n, d.c, w.j),
        ),
        None => Produced::value(json!({ "contains": false, "witness": null }), "false"),
    })
}

// ---- wang ----

fn load_group(input: &str) -> Result<WangGroup, CliError> {
    Ok(WangGroup::new(wire::parse_descriptor(&load(input)?)?)?)
}

pub fn wang_validate(input: &str) -> Out {
    let d = wire::parse_descriptor(&load(input)?)?;
    let diags: Vec<&str> = d.diagnostics().iter().map(|x| x.code()).collect();
    let valid = diags.is_empty();
    let result = json!({ "shape": d.shape_name(), "valid": valid, "diagnostics": diags });
    let observed = if valid { "no diagnostics".to_string() } else { diags.join(", ") };
    let check = CheckRecord::new(format!("{} descriptor valid", d.shape_name()), observed, "no diagnostics", valid);
    Ok(Produced { result, text: Vec::new(), checks: vec![check] })
}

pub fn wang_classify(input: &str) -> Out {
    let g = load_group(input)?;
    let t = g.classify_type();
    let result = json!({ "type": t.code(), "criteria": g.inoue_criteria() });
    Ok(Produced::value(result, t.code()))
}

pub fn wang_center(input: &str) -> Out {
    let g = load_group(input)?;
    Ok(match g.center() {
        Center::Trivial => Produced::value(json!({ "trivial": true, "generators": [] }), "trivial"),
        Center::GeneratedBy(gens) => {
            let vs: Vec<Value> = gens.iter().map(wire::wang_element).collect();
            let text = format!("generated by {}", gens.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
            Produced::value(json!({ "trivial": false, "generators": vs }), text)
        }
    })
}

pub fn wang_commutator_lattice(input: &str) -> Out {
    let g = load_group(input)?;
    let c = g.commutator_lattice()?;
    let idx = c.index_in_gamma0();
    let mut result = json!({
        "generators": wire::matrix(&c.generators),
        "invariant_factors": wire::int_list(&c.invariant_factors),
        "abelian_index": wire::int(&c.abelian_index),
        "index_in_gamma0": wire::int(&idx),
    });
    if let Some(l) = &c.lattice {
        result["lattice"] = wire::sublattice(l);
    }
    if let Some(s) = &c.heis {
        result["heis"] = wire::subgroup(s);
    }
    let mut text = vec![
        format!("invariant factors of M - Id: {}", join(&c.invariant_factors)),
        format!("index in Gamma0: {idx}"),
    ];
    text.extend(matrix_lines("generators (columns)", &c.generators));
    Ok(Produced { result, text, checks: Vec::new() })
}

pub fn wang_psi_check(r: &BigInt) -> Out {
    let psi = psi_automorphism(r)?;
    let relations = psi.check_relations();
    let witness = psi.gamma0_not_preserved_witness();
    let images: Vec<Value> = psi.images().iter().map(wire::wang_element).collect();
    let result = json!({
        "r": wire::int(r),
        "images": images,
        "relations_hold": relations.is_ok(),
        "witness": witness.as_ref().map(|(x, y)| json!({ "element": wire::wang_element(x), "image": wire::wang_element(y) })),
    });
    let checks = vec![
        CheckRecord::new(
            "psi preserves the defining relations",
            relations.as_ref().err().cloned().unwrap_or_else(|| "all relations hold".into()),
            "every relation",
            relations.is_ok(),
        )
        .with_inputs(format!("r = {r}")),
        CheckRecord::new(
            "psi(Gamma0) != Gamma0",
            witness.as_ref().map_or("no witness".into(), |(x, y)| format!("psi({x}) = {y}")),
            "a delta_i leaving Gamma0",
            witness.is_some(),
        )
        .with_inputs(format!("r = {r}")),
    ];
    Ok(Produced { result, text: Vec::new(), checks })
}

// ---- quot ----

pub fn quot_build(spec: &str, max_order: usize) -> Out {
    let spec = wire::parse_spec(&load(spec)?)?;
    let q = build_quotient_capped(&spec, max_order)?;
    let ok = q.structure_holds();
    let n = q.table.order();
    let text = vec![
        format!("order {n}, {}", if q.table.is_abelian() { "abelian" } else { "nonabelian" }),
        format!("elements: {}", q.table.labels().join(" ")),
    ];
    let check = CheckRecord::new(
        "|G| = [Gamma0 : Gamma0']*k and image of Gamma0 normal of index k",
        format!("|G| = {n}"),
        format!("{} = {}*{}", spec.quotient_order(), spec.gamma0_part.index(), spec.k),
        ok,
    );
    Ok(Produced { result: wire::quotient(&q), text, checks: vec![check] })
}

fn report_checks(r: &BoundReport, inputs: &str) -> (Vec<CheckRecord>, Vec<String>) {
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for c in &r.checks {
        if c.informational {
            if !c.holds {
                notes.push(format!("note: {} = {} is exceeded (informational)", c.name, c.value));
            }
            continue;
        }
        let (observed, bound) = match c.observed {
            Some(o) => (format!("min index {o}"), c.value.to_string()),
            None => (format!("value {}", c.value), "side condition".to_string()),
        };
        checks.push(CheckRecord::new(c.name.clone(), observed, bound, c.holds).with_inputs(inputs));
    }
    checks.push(
        CheckRecord::new("quotient structure", format!("|G| = {}", r.order), "exact", r.structure_ok).with_inputs(inputs),
    );
    (checks, notes)
}

pub fn quot_bound_check(spec: &str) -> Out {
    let spec = wire::parse_spec(&load(spec)?)?;
    let r = verify_bound(&spec)?;
    let (checks, notes) = report_checks(&r, "");
    let mut text = vec![format!("|G| = {}, min index of a normal abelian subgroup {}, bound {}", r.order, r.observed_min_index, r.bound)];
    if let Some(g) = &r.gamma_r {
        text.push(format!("Gamma = H({g}) x Z"));
    }
    text.extend(notes);
    Ok(Produced { result: wire::report(&r), text, checks })
}

pub fn quot_decompose(input: &str) -> Out {
    let v = load(input)?;
    let ambient = wire::parse_descriptor(wire::field(&v, "ambient")?)?;
    let Value::Array(gs) = wire::field(&v, "generators")? else {
        return Err(CliError::BadInput("generators: expected an array of {h, t} elements".into()));
    };
    let gens = gs.iter().map(wire::parse_wang_element).collect::<Result<Vec<_>, _>>()?;
    let spec = decompose_normal_subgroup(&ambient, &gens)?;
    let normal = spec.check_normal();
    let result = json!({ "spec": wire::spec(&spec), "normal": normal.is_ok(), "quotient_order": wire::int(&spec.quotient_order()) });
    let mut text = vec![compact(&wire::spec(&spec))];
    text.push(match &normal {
        Ok(()) => format!("normal, quotient order {}", spec.quotient_order()),
        Err(e) => format!("not normal: {e}"),
    });
    Ok(Produced { result, text, checks: Vec::new() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Heis,
    Kodaira,
    Sm,
    Spm,
}

/// Optional overrides; each applies to some families only.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct GridFlags {
    /// heis: largest r [default 3]
    #[arg(long)]
    pub r_max: Option<i64>,
    /// heis: largest |a1|, |a2|, |b1|, |b2| [default 4]
    #[arg(long)]
    pub entry_max: Option<i64>,
    /// heis: largest subgroup index [default 512]
    #[arg(long)]
    pub index_cap: Option<usize>,
    /// kodaira: largest ambient r [default 2]
    #[arg(long)]
    pub r_hat_max: Option<i64>,
    /// kodaira, sm, spm: largest k [defaults 3, 6, 8]
    #[arg(long)]
    pub k_max: Option<u64>,
    /// kodaira, sm, spm: largest quotient order [defaults 256, 512, 512]
    #[arg(long)]
    pub max_order: Option<u64>,
    /// kodaira, spm: largest index of the Heisenberg part [defaults 16, 32]
    #[arg(long)]
    pub max_index: Option<u64>,
    /// sm: number of correction vectors tried [default 8]
    #[arg(long)]
    pub deltas: Option<usize>,
}

impl GridFlags {
    fn reject(&self, family: Family, names: &[(&str, bool)]) -> Result<(), CliError> {
        match names.iter().find(|(_, set)| *set) {
            Some((n, _)) => Err(CliError::Usage(format!("--{n} does not apply to --family {family:?}").to_lowercase())),
            None => Ok(()),
        }
    }
}

pub fn quot_grid(family: Family, f: &GridFlags) -> Out {
    let (records, limits) = match family {
        Family::Heis => {
            f.reject(family, &[
                ("r-hat-max", f.r_hat_max.is_some()),
                ("k-max", f.k_max.is_some()),
                ("max-order", f.max_order.is_some()),
                ("max-index", f.max_index.is_some()),
                ("deltas", f.deltas.is_some()),
            ])?;
            let d = HeisGridLimits::default();
            let l = HeisGridLimits {
                r_max: f.r_max.unwrap_or(d.r_max),
                entry_max: f.entry_max.unwrap_or(d.entry_max),
                index_cap: f.index_cap.unwrap_or(d.index_cap),
            };
            let lj = json!({ "r_max": l.r_max, "entry_max": l.entry_max, "index_cap": l.index_cap });
            (heis_grid(&l)?, lj)
        }
        Family::Kodaira => {
            f.reject(family, &[
                ("r-max", f.r_max.is_some()),
                ("entry-max", f.entry_max.is_some()),
                ("index-cap", f.index_cap.is_some()),
                ("deltas", f.deltas.is_some()),
            ])?;
            let d = KodairaGridLimits::default();
            let l = KodairaGridLimits {
                r_hat_max: f.r_hat_max.unwrap_or(d.r_hat_max),
                k_max: f.k_max.unwrap_or(d.k_max),
                max_order: f.max_order.unwrap_or(d.max_order),
                max_index: f.max_index.unwrap_or(d.max_index),
            };
            let lj = json!({ "r_hat_max": l.r_hat_max, "k_max": l.k_max, "max_order": l.max_order, "max_index": l.max_index });
            (kodaira_grid(&l)?, lj)
        }
        Family::Sm => {
            f.reject(family, &[
                ("r-max", f.r_max.is_some()),
                ("entry-max", f.entry_max.is_some()),
                ("index-cap", f.index_cap.is_some()),
                ("r-hat-max", f.r_hat_max.is_some()),
                ("max-index", f.max_index.is_some()),
            ])?;
            let d = SmGridLimits::default();
            let l = SmGridLimits {
                k_max: f.k_max.unwrap_or(d.k_max),
                max_order: f.max_order.unwrap_or(d.max_order),
                deltas: f.deltas.unwrap_or(d.deltas),
            };
            let lj = json!({ "k_max": l.k_max, "max_order": l.max_order, "deltas": l.deltas });
            (sm_grid(&l)?, lj)
        }
        Family::Spm => {
            f.reject(family, &[
                ("r-max", f.r_max.is_some()),
                ("entry-max", f.entry_max.is_some()),
                ("index-cap", f.index_cap.is_some()),
                ("r-hat-max", f.r_hat_max.is_some()),
                ("deltas", f.deltas.is_some()),
            ])?;
            let d = SpmGridLimits::default();
            let l = SpmGridLimits {
                k_max: f.k_max.unwrap_or(d.k_max),
                max_order: f.max_order.unwrap_or(d.max_order),
                max_index: f.max_index.unwrap_or(d.max_index),
            };
            let lj = json!({ "k_max": l.k_max, "max_order": l.max_order, "max_index": l.max_index });
            (spm_grid(&l)?, lj)
        }
    };
    let mut records: Vec<&GridRecord> = records.iter().collect();
    records.sort_by(|a, b| a.key.cmp(&b.key));
    let checks: Vec<CheckRecord> = records.iter().map(|rec| grid_line(rec)).collect();
    let failed = checks.iter().filter(|c| c.status == jordan_core::suite::Status::Fail).count();
    let name = format!("{family:?}").to_lowercase();
    let result = json!({ "family": name, "limits": limits, "instances": checks.len(), "failed": failed });
    let text = vec![format!("{name} grid: {} instances", checks.len())];
    Ok(Produced { result, text, checks })
}

fn grid_line(rec: &GridRecord) -> CheckRecord {
    let r = &rec.report;
    let broken: Vec<&str> = r.violations().filter(|c| !c.informational).map(|c| c.name.as_str()).collect();
    let mut observed = format!("|G| = {}, min index {}", r.order, r.observed_min_index);
    if !broken.is_empty() {
        observed.push_str(&format!(", broken: {}", broken.join("; ")));
    }
    if !r.structure_ok {
        observed.push_str(", structure broken");
    }
    CheckRecord::new(rec.key.clone(), observed, r.bound.to_string(), r.pass())
}

// ---- verify ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum VerifyGroup {
    All,
    Heis,
    Quot,
    Numth,
}

pub fn verify(group: VerifyGroup, seed: u64) -> Out {
    let group = match group {
        VerifyGroup::All => Group::All,
        VerifyGroup::Heis => Group::Heis,
        VerifyGroup::Quot => Group::Quot,
        VerifyGroup::Numth => Group::Numth,
    };
    let suite = Suite::new(seed);
    let outcomes = suite.run_group(group);
    let checks: Vec<CheckRecord> = outcomes
        .iter()
        .map(|o| CheckRecord {
            name: format!("[{}] {}", o.id, o.name),
            inputs: o.inputs.clone(),
            observed: o.observed.clone(),
            bound: o.bound.clone(),
            status: o.status,
            elapsed: Some(o.elapsed),
        })
        .collect();
    let result = json!({ "seed": seed, "criteria": group.ids() });
    Ok(Produced { result, text: vec![format!("verify (seed {seed})")], checks })
}
