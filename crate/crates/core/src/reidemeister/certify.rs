//! Infinitude certificates for `R(φ)` and the coincidence number `R(φ,ψ)`.
//!
//! If `λ : G -> Q` is a homomorphism with `λ∘φ = λ∘ψ = λ`, then
//! `λ(ψ(γ) α φ(γ)^-1) = λ(α)`, so `λ` is constant on twisted classes and
//! any family on which `λ` is injective lies in pairwise distinct classes.
//! The catalog tries `|.|_a`, then `|.|_b` (only a homomorphism when
//! `m = n`), then `κ` on `K = ker |.|_a`.
//!
//! `κ` is only defined on `K`. When `φ` and `ψ` preserve `K` and induce
//! different multiplications `k_φ != k_ψ` on `Z = G/K`, two elements of `K`
//! can only be related by some `γ` with `(k_ψ - k_φ)|γ|_a = 0`, i.e. by
//! `γ ∈ K`. On `K` the images scale `κ` by `d = κ(φ(b))` (the relations
//! `g_{i+1}^m = g_i^n` propagate the scale from `g_0 = b` to every `g_i`),
//! so `d_φ = d_ψ = 1` makes `κ` constant on the classes meeting `K`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::abelian::AbelianMap;
use super::certificate::{Attempt, Certificate, Invariant, ReidemeisterOutcome, ScaleCheck, Witness, WITNESS_COUNT};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::homs::{endo_validate, kappa, EndoSpec, InducedData, KappaScale};
use crate::word::{Gen, Word};

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

type CatalogEntry = fn(&GroupSpec, &[(&EndoSpec, &InducedData, &str); 2]) -> CatalogResult;
type Functional = dyn Fn(&Word) -> Option<BigRational>;

/// The outcome of one catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogResult {
    pub attempt: Attempt,
    pub certificate: Option<Certificate>,
}

fn refuse_abelian(group: &GroupSpec) -> Result<()> {
    if group.is_abelian() {
        return Err(Error::UnsupportedGroup(format!(
            "{group} is abelian (Z + Z); twisted classes there are cokernel classes, use the abelian solver"
        )));
    }
    Ok(())
}

/// `R(φ) = ∞` certificate, or `Unknown` listing what was tried. Never
/// returns `Finite`.
pub fn certify_infinite(spec: &EndoSpec) -> Result<ReidemeisterOutcome> {
    let identity = EndoSpec::identity(*spec.group());
    coincidence_certify(spec, &identity)
}

/// Certificate that `R(φ,ψ) = ∞`, the classes of `α ~ ψ(γ) α φ(γ)^-1`.
pub fn coincidence_certify(phi: &EndoSpec, psi: &EndoSpec) -> Result<ReidemeisterOutcome> {
    let results = certify_catalog(phi, psi, false)?;
    if let Some(cert) = results.iter().find_map(|r| r.certificate.clone()) {
        return Ok(ReidemeisterOutcome::Infinite(Box::new(cert)));
    }
    Ok(ReidemeisterOutcome::Unknown(results.into_iter().map(|r| r.attempt).collect()))
}

/// Runs the catalog in its fixed order. Stops after the first success
/// unless `all` is set.
pub fn certify_catalog(phi: &EndoSpec, psi: &EndoSpec, all: bool) -> Result<Vec<CatalogResult>> {
    if phi.group() != psi.group() {
        return Err(Error::GroupMismatch(phi.group().to_string(), psi.group().to_string()));
    }
    let group = *phi.group();
    refuse_abelian(&group)?;
    let data_phi = endo_validate(phi)?;
    let data_psi = endo_validate(psi)?;
    let maps = [(phi, &data_phi, "phi"), (psi, &data_psi, "psi")];

    let entries: [CatalogEntry; 3] = [try_exp_sum_a, try_exp_sum_b, try_kappa];
    let mut out = Vec::new();
    for entry in entries {
        let result = entry(&group, &maps);
        let done = result.certificate.is_some();
        out.push(result);
        if done && !all {
            break;
        }
    }
    Ok(out)
}

fn witnesses_in_powers(step: Word, lambda: impl Fn(&Word) -> BigRational) -> (Vec<Witness>, Vec<BigRational>) {
    (0..WITNESS_COUNT as i64)
        .map(|j| {
            let w = step.pow(j);
            let v = lambda(&w);
            (Witness::Word(w), v)
        })
        .unzip()
}

fn finish(
    invariant: Invariant,
    scale_checks: Vec<ScaleCheck>,
    step: Word,
    lambda: impl Fn(&Word) -> BigRational,
) -> CatalogResult {
    let name = invariant.name().to_string();
    let failed: Vec<String> = scale_checks
        .iter()
        .filter(|c| !c.holds())
        .map(|c| format!("{}: {} {} {} fails", c.label, c.lhs, c.relation(), c.rhs))
        .collect();
    if !failed.is_empty() {
        return CatalogResult {
            attempt: Attempt { invariant: name, succeeded: false, reason: failed.join("; ") },
            certificate: None,
        };
    }
    let (first_witnesses, values) = witnesses_in_powers(step.clone(), lambda);
    let cert = Certificate {
        invariant,
        scale_checks,
        witness_base: Witness::Word(Word::identity()),
        witness_step: Witness::Word(step),
        first_witnesses,
        values,
    };
    let consistent = cert.is_consistent();
    CatalogResult {
        attempt: Attempt {
            invariant: name,
            succeeded: consistent,
            reason: if consistent { "all scale checks hold".into() } else { "witness values collide".into() },
        },
        certificate: consistent.then_some(cert),
    }
}

fn exp_sum_checks(gen: Gen, maps: &[(&EndoSpec, &InducedData, &str); 2], sym: &str) -> Vec<ScaleCheck> {
    let mut checks = Vec::new();
    for (spec, _, name) in maps {
        for (g, unit) in [(Gen::A, "a"), (Gen::B, "b")] {
            let rhs = if g == gen { 1 } else { 0 };
            checks.push(ScaleCheck::new(
                format!("|{name}({unit})|_{sym} = |{unit}|_{sym}"),
                int(spec.image(g).exp_sum(gen)),
                int(rhs),
            ));
        }
    }
    checks
}

fn try_exp_sum_a(_group: &GroupSpec, maps: &[(&EndoSpec, &InducedData, &str); 2]) -> CatalogResult {
    let checks = exp_sum_checks(Gen::A, maps, "a");
    finish(Invariant::ExpSumA, checks, Word::a(1), |w| int(w.exp_sum(Gen::A)))
}

fn try_exp_sum_b(group: &GroupSpec, maps: &[(&EndoSpec, &InducedData, &str); 2]) -> CatalogResult {
    if !group.is_equal_case() {
        return CatalogResult {
            attempt: Attempt {
                invariant: Invariant::ExpSumB.name().into(),
                succeeded: false,
                reason: format!("|.|_b is not a homomorphism on {group} (m != n)"),
            },
            certificate: None,
        };
    }
    let checks = exp_sum_checks(Gen::B, maps, "b");
    finish(Invariant::ExpSumB, checks, Word::b(1), |w| int(w.exp_sum(Gen::B)))
}

fn try_kappa(group: &GroupSpec, maps: &[(&EndoSpec, &InducedData, &str); 2]) -> CatalogResult {
    let fail = |reason: String| CatalogResult {
        attempt: Attempt { invariant: Invariant::Kappa.name().into(), succeeded: false, reason },
        certificate: None,
    };
    let mut checks = Vec::new();
    for (spec, data, name) in maps {
        checks.push(ScaleCheck::new(
            format!("|{name}(b)|_a = 0"),
            int(data.b_exp_sum_a.clone()),
            BigRational::zero(),
        ));
        if !data.kernel_preserved {
            continue;
        }
        match &data.kappa_scale {
            Some(KappaScale::Scale { d, window }) => checks.push(ScaleCheck::new(
                format!("kappa({name}(g_i)) = kappa(g_i), |i| <= {window}"),
                d.clone(),
                BigRational::one(),
            )),
            _ => return fail(format!("{name} does not scale kappa uniformly")),
        }
        let image = spec.image_b();
        match kappa(image, group) {
            Ok(v) => checks.push(ScaleCheck::new(format!("kappa({name}(b)) = kappa(b)"), v, BigRational::one())),
            Err(e) => return fail(e.to_string()),
        }
    }
    let (phi, psi) = (maps[0].1, maps[1].1);
    checks.push(ScaleCheck::not_equal("|phi(a)|_a != |psi(a)|_a", int(phi.k.clone()), int(psi.k.clone())));
    let group = *group;
    finish(Invariant::Kappa, checks, Word::b(1), move |w| {
        kappa(w, &group).expect("witnesses are powers of b")
    })
}

/// Re-derives every claim of `cert` from `phi`, `psi` and the witness
/// words alone. Returns the list of failures (empty when sound).
pub fn verify_certificate(cert: &Certificate, phi: &EndoSpec, psi: &EndoSpec) -> Vec<String> {
    let mut failures = Vec::new();
    let group = *phi.group();
    if psi.group() != &group {
        return vec!["phi and psi act on different groups".into()];
    }
    for (spec, name) in [(phi, "phi"), (psi, "psi")] {
        if !spec.is_valid() {
            failures.push(format!("{name} does not respect the relation"));
        }
    }

    let lambda: Box<Functional> = match &cert.invariant {
        Invariant::ExpSumA => Box::new(|w: &Word| Some(int(w.exp_sum(Gen::A)))),
        Invariant::ExpSumB if group.is_equal_case() => Box::new(|w: &Word| Some(int(w.exp_sum(Gen::B)))),
        Invariant::ExpSumB => return vec![format!("|.|_b is not a homomorphism on {group}")],
        Invariant::Kappa => Box::new(move |w: &Word| kappa(w, &group).ok()),
        Invariant::Functional(_) => return vec!["abelian functional on a non-abelian group".into()],
    };

    match &cert.invariant {
        Invariant::Kappa => {
            for (spec, name) in [(phi, "phi"), (psi, "psi")] {
                if !spec.image_b().exp_sum(Gen::A).is_zero() {
                    failures.push(format!("{name} does not preserve ker |.|_a"));
                    continue;
                }
                if lambda(spec.image_b()) != Some(BigRational::one()) {
                    failures.push(format!("kappa({name}(b)) != 1"));
                }
            }
            if phi.k() == psi.k() {
                failures.push("phi and psi induce the same map on Z".into());
            }
        }
        _ => {
            for (spec, name) in [(phi, "phi"), (psi, "psi")] {
                for gen in [Gen::A, Gen::B] {
                    if lambda(spec.image(gen)) != lambda(&Word::gen(gen, 1)) {
                        failures.push(format!("lambda({name}({gen:?})) != lambda({gen:?})"));
                    }
                }
            }
        }
    }

    let (Witness::Word(base), Witness::Word(step)) = (&cert.witness_base, &cert.witness_step) else {
        failures.push("witness family is not given by words".into());
        return failures;
    };
    let mut seen: Vec<BigRational> = Vec::new();
    for (j, w) in cert.first_witnesses.iter().enumerate() {
        let Witness::Word(w) = w else {
            failures.push(format!("witness {j} is not a word"));
            continue;
        };
        if *w != base.multiply(&step.pow(j as i64)) {
            failures.push(format!("witness {j} is not base * step^{j}"));
        }
        match lambda(w) {
            Some(v) => {
                if cert.values.get(j) != Some(&v) {
                    failures.push(format!("recorded value of witness {j} is wrong"));
                }
                if seen.contains(&v) {
                    failures.push(format!("witness {j} repeats the value {v}"));
                }
                seen.push(v);
            }
            None => failures.push(format!("lambda undefined on witness {j}")),
        }
    }
    if cert.first_witnesses.len() != WITNESS_COUNT {
        failures.push(format!("expected {WITNESS_COUNT} witnesses"));
    }
    // the step must move lambda, otherwise the family collapses
    if lambda(step).is_none_or(|v| v.is_zero()) {
        failures.push("lambda(step) = 0".into());
    }
    failures
}

/// Checks an abelian certificate: `λ` kills every column of `g - f` and every
/// torsion relation, and separates the witnesses.
pub fn verify_abelian_certificate(cert: &Certificate, f: &AbelianMap, g: &AbelianMap) -> Vec<String> {
    let Invariant::Functional(lambda) = &cert.invariant else {
        return vec!["not an abelian functional".into()];
    };
    let mut failures = Vec::new();
    let k = f.group().generators();
    if lambda.len() != k {
        return vec!["functional has the wrong length".into()];
    }
    let eval = |v: &[BigInt]| -> BigInt { lambda.iter().zip(v).map(|(l, x)| l * x).sum() };
    for j in 0..k {
        if eval(&g.image_of_generator(j)) != eval(&f.image_of_generator(j)) {
            failures.push(format!("lambda(g(e{j})) != lambda(f(e{j}))"));
        }
        let d = &f.group().moduli()[j];
        if !(&lambda[j] * d).is_zero() {
            failures.push(format!("lambda does not vanish on {d} e{j}"));
        }
    }
    let mut seen = Vec::new();
    for w in &cert.first_witnesses {
        let Witness::Vector(v) = w else {
            failures.push("witness is not a vector".into());
            continue;
        };
        let x = eval(v);
        if seen.contains(&x) {
            failures.push(format!("witness value {x} repeats"));
        }
        seen.push(x);
    }
    failures
}
