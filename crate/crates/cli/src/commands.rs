use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{json, Value};
use sympal::classify::{classify_seeded, ClassifyError};
use sympal::fixture::{FixtureError, GroupFixture, VerdictDoc};
use sympal::groupkit::GroupError;
use sympal::mackey::{sweep_prop_nh_with_primes, sweep_res_nontrivial, FiniteGroup, MackeyError};
use sympal::npgroup::{build_chi, build_np_group, find_np_primes, twist_unramified, NpError, NpParams};
use sympal::regularity::{check_npower_distinct_auto, twist_by_cyclotomic, NpowerVerdict, RegularityError, WeightProfile};

use crate::cache::Cache;
use crate::Common;

pub const OK: u8 = 0;
pub const MALFORMED: u8 = 1;
pub const PRECONDITION: u8 = 2;
pub const CAP_EXCEEDED: u8 = 3;
pub const COLLISION: u8 = 4;
pub const COUNTEREXAMPLE: u8 = 5;
pub const INTERNAL: u8 = 6;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(MALFORMED, format!("{}: {e}", path.display())))
}

fn emit(common: &Common, doc: &Value, text: impl FnOnce() -> String) {
    if common.json {
        println!("{}", serde_json::to_string_pretty(doc).expect("json"));
    } else {
        println!("{}", text());
    }
}

fn fixture_failure(e: FixtureError) -> Failure {
    match e {
        FixtureError::Group(GroupError::CapExceeded { .. }) => fail(CAP_EXCEEDED, e),
        _ => fail(MALFORMED, e),
    }
}

fn classify_failure(e: ClassifyError) -> Failure {
    let code = match &e {
        ClassifyError::CharTooSmall(_) | ClassifyError::NoTransvection | ClassifyError::Unverified => PRECONDITION,
        ClassifyError::CapExceeded { .. } => CAP_EXCEEDED,
        ClassifyError::Group(_) => MALFORMED,
        ClassifyError::WitnessCheckFailed(_) | ClassifyError::NoOrderMatch { .. } => INTERNAL,
    };
    let name = match &e {
        ClassifyError::CharTooSmall(_) => "CharTooSmall",
        ClassifyError::NoTransvection => "NoTransvection",
        ClassifyError::Unverified => "Unverified",
        ClassifyError::CapExceeded { .. } => "CapExceeded",
        ClassifyError::Group(_) => "InvalidGroup",
        ClassifyError::WitnessCheckFailed(_) => "WitnessCheckFailed",
        ClassifyError::NoOrderMatch { .. } => "NoOrderMatch",
    };
    fail(code, format!("{name}: {e}"))
}

fn classify_doc(fx: &GroupFixture, common: &Common) -> Result<Value, Failure> {
    let canonical = serde_json::to_string(fx).expect("json");
    let cache = Cache::from_env();
    let key = Cache::key(&["classify", &canonical, &common.cap.to_string(), &common.seed.to_string()]);
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        if let Ok(v) = serde_json::from_str(&hit) {
            return Ok(v);
        }
    }
    let g = fx.to_group().map_err(fixture_failure)?;
    let verdict = classify_seeded(&g, common.cap, common.seed).map_err(classify_failure)?;
    let doc = serde_json::to_value(VerdictDoc::from(&verdict)).expect("json");
    if let Some(c) = cache {
        c.put(&key, &doc.to_string());
    }
    Ok(doc)
}

fn describe_verdict(doc: &Value) -> String {
    match doc["case"].as_str().unwrap_or("?") {
        "reducible" => format!(
            "reducible: invariant subspace of dimension {}",
            doc["witness"].as_array().map_or(0, |w| w.len())
        ),
        "induced" => format!(
            "induced: {} orthogonal nonsingular blocks of dimension {}",
            doc["block_count"], doc["block_dim"]
        ),
        "huge" => format!(
            "huge: transvection subgroup is Sp over the subfield of degree {} (order {})",
            doc["subfield_degree"], doc["transvection_subgroup_order"]
        ),
        other => other.to_string(),
    }
}

pub fn run_classify(input: &Path, common: &Common) -> Outcome {
    let fx = GroupFixture::from_json(&read(input)?).map_err(fixture_failure)?;
    let doc = classify_doc(&fx, common)?;
    emit(common, &doc, || describe_verdict(&doc));
    Ok(OK)
}

pub struct NpArgs {
    pub n: u32,
    pub q: u64,
    pub p: u64,
    pub ell: u64,
    pub twist: Option<i64>,
    pub classify: bool,
    pub conductor: Option<(u64, u64)>,
    pub output: Option<PathBuf>,
}

fn np_failure(e: NpError) -> Failure {
    let code = match &e {
        NpError::InvalidParams(_) | NpError::Field(_) | NpError::TooLarge(_) | NpError::Unverified => PRECONDITION,
        NpError::Group(GroupError::CapExceeded { .. }) => CAP_EXCEEDED,
        _ => INTERNAL,
    };
    fail(code, e)
}

pub fn run_np_group(args: &NpArgs, common: &Common) -> Outcome {
    if let Some((a, b)) = args.conductor {
        if num_integer::gcd(a, b) != 1 {
            return Err(fail(PRECONDITION, format!("gcd(N1, N2) = gcd({a}, {b}) is not 1")));
        }
    }
    let params = NpParams::new(args.n, args.q, args.p, args.ell).map_err(np_failure)?;
    let chi = build_chi(&params).map_err(np_failure)?;
    let mut np = build_np_group(&chi).map_err(np_failure)?;
    if let Some(a) = args.twist {
        let alpha = chi.field.from_int(a);
        np = twist_unramified(&np, alpha).map_err(np_failure)?;
    }
    let order = np
        .group
        .enumerate(common.cap)
        .map_err(|e| np_failure(NpError::Group(e)))?
        .len();
    let mut fx = GroupFixture::from_group(&np.group);
    let mut meta = json!({
        "kind": "np-group",
        "n": args.n,
        "q": args.q,
        "p": args.p,
        "ell": args.ell,
        "ext_degree": params.ext_degree,
        "twist": args.twist,
        "order": order,
    });
    if let Some((a, b)) = args.conductor {
        meta["conductor"] = json!({ "n1": a, "n2": b, "n": a * b });
    }
    fx.metadata = Some(meta);
    let text = fx.to_json();
    match &args.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| fail(INTERNAL, format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    eprintln!(
        "(n,p)-group over F_{}^{}: order {order}, invariant form preserved",
        args.ell, params.ext_degree
    );
    if args.classify {
        match classify_doc(&fx, common) {
            Err(f) if f.message.starts_with("NoTransvection") => {
                eprintln!("classify: NoTransvection (expected: the (n,p)-group contains no transvection)");
            }
            Err(f) => return Err(f),
            Ok(doc) => {
                return Err(fail(
                    INTERNAL,
                    format!("classify unexpectedly succeeded: {}", describe_verdict(&doc)),
                ))
            }
        }
    }
    Ok(OK)
}

pub fn run_find_primes(n: u32, q_max: u64, common: &Common) -> Outcome {
    let pairs = find_np_primes(n, q_max).map_err(np_failure)?;
    let doc = json!({
        "n": n,
        "q_max": q_max,
        "pairs": pairs.iter().map(|&(q, p)| json!({"q": q, "p": p})).collect::<Vec<_>>(),
    });
    emit(common, &doc, || {
        let mut s = format!("{:>8} {:>12}", "q", "p");
        for (q, p) in &pairs {
            s.push_str(&format!("\n{q:>8} {p:>12}"));
        }
        s
    });
    Ok(OK)
}

fn regularity_failure(e: RegularityError) -> Failure {
    match e {
        RegularityError::Invalid(_) => fail(MALFORMED, e),
        RegularityError::TwistBreaksRegularity(_) => fail(PRECONDITION, e),
        RegularityError::Overflow => fail(INTERNAL, e),
    }
}

pub fn run_regularity(input: &Path, twist: Option<i64>, common: &Common) -> Outcome {
    let text = read(input)?;
    let mut profile: WeightProfile = serde_json::from_str(&text).map_err(|e| fail(MALFORMED, e))?;
    if let Some(a) = twist {
        profile = twist_by_cyclotomic(&profile, a).map_err(regularity_failure)?;
    }
    let verdict = check_npower_distinct_auto(&profile).map_err(regularity_failure)?;
    let (doc, code) = match &verdict {
        NpowerVerdict::Distinct { certificates } => (
            json!({
                "verdict": "distinct",
                "certificates": certificates.iter().map(|(i, j, c)| json!({
                    "pair": [i, j],
                    "c0": c.c0.to_string(),
                    "modulus": c.modulus.to_string(),
                })).collect::<Vec<_>>(),
            }),
            OK,
        ),
        NpowerVerdict::Collision {
            first,
            second,
            characters,
            lifted,
        } => (
            json!({
                "verdict": "collision",
                "pair": [first, second],
                "characters": [
                    {"niveau": characters.0.niveau, "exponent": characters.0.exponent.to_string()},
                    {"niveau": characters.1.niveau, "exponent": characters.1.exponent.to_string()},
                ],
                "lifted": lifted.to_string(),
            }),
            COLLISION,
        ),
    };
    emit(common, &doc, || match &verdict {
        NpowerVerdict::Distinct { certificates } => {
            format!("distinct: {} pairs certified", certificates.len())
        }
        NpowerVerdict::Collision { first, second, .. } => {
            format!("collision: characters {first} and {second} have equal n!-th powers")
        }
    });
    Ok(code)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    permutations: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    table: Option<Vec<Vec<usize>>>,
}

#[derive(Deserialize, Default, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum SweepKind {
    Prop,
    Lemma,
    #[default]
    Both,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MackeySpec {
    group: GroupSpec,
    #[serde(default)]
    sweep: SweepKind,
    /// Restricts the primes `p`; by default every prime dividing `|N|`.
    #[serde(default)]
    primes: Option<Vec<u64>>,
}

fn mackey_failure(e: MackeyError) -> Failure {
    match e {
        MackeyError::Malformed(_) => fail(MALFORMED, e),
        MackeyError::NotMonomial { .. } => fail(PRECONDITION, e),
        _ => fail(INTERNAL, e),
    }
}

pub fn run_mackey(input: &Path, common: &Common) -> Outcome {
    let spec: MackeySpec = serde_json::from_str(&read(input)?).map_err(|e| fail(MALFORMED, e))?;
    let name = spec.group.name.clone().unwrap_or_else(|| "G".into());
    let g = match (&spec.group.permutations, &spec.group.table) {
        (Some(perms), None) => FiniteGroup::from_permutations(&name, perms),
        (None, Some(table)) => FiniteGroup::from_table(&name, table.clone()),
        _ => return Err(fail(MALFORMED, "group needs exactly one of \"permutations\" or \"table\"")),
    }
    .map_err(mackey_failure)?;
    let mut doc = json!({ "group": name, "order": g.order() });
    let mut bad = 0;
    let mut lines = vec![format!("{name}: order {}", g.order())];
    if spec.sweep != SweepKind::Lemma {
        let r = sweep_prop_nh_with_primes(&g, spec.primes.as_deref()).map_err(mackey_failure)?;
        bad += r.counterexamples.len();
        lines.push(format!(
            "normal-subgroup sweep: {} qualifying, {} skipped, {} matches, {} counterexamples",
            r.qualifying,
            r.skipped,
            r.matches,
            r.counterexamples.len()
        ));
        doc["prop"] = serde_json::to_value(&r).expect("json");
    }
    if spec.sweep != SweepKind::Prop {
        let r = sweep_res_nontrivial(&g).map_err(mackey_failure)?;
        bad += r.trivial_restrictions;
        lines.push(format!(
            "restriction sweep: {} checked, {} trivial restrictions",
            r.checked, r.trivial_restrictions
        ));
        doc["lemma"] = serde_json::to_value(&r).expect("json");
    }
    doc["counterexamples"] = json!(bad);
    emit(common, &doc, || lines.join("\n"));
    Ok(if bad == 0 { OK } else { COUNTEREXAMPLE })
}
