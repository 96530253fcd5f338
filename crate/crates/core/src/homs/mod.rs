//! Endomorphisms of `B(m,n)` given by the images of `a` and `b`, and the
//! maps they induce on `Z`, on the abelianization and on `ker |.|_a`.

mod kernel;
mod koch;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

pub use kernel::{kappa, kappa_of_generator, kappa_scale, kernel_decompose, KappaScale, KernelDecomposition};
pub use koch::koch_form_search;

use crate::britton::{is_trivial, normal_form};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::reidemeister::{power_constraint_holds, AbelianGroup, AbelianMap, IntMatrix};
use crate::word::{parse_word, Gen, Word};

/// Index window used by [`kappa_scale`] unless told otherwise.
pub const DEFAULT_WINDOW: u32 = 8;

/// `a ↦ image_a`, `b ↦ image_b`. Construction does not check the relation;
/// see [`endo_validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EndoSpec {
    group: GroupSpec,
    image_a: Word,
    image_b: Word,
}

impl EndoSpec {
    pub fn new(group: GroupSpec, image_a: Word, image_b: Word) -> Self {
        EndoSpec { group, image_a, image_b }
    }

    pub fn identity(group: GroupSpec) -> Self {
        EndoSpec::new(group, Word::a(1), Word::b(1))
    }

    /// `x ↦ g x g^-1`
    pub fn inner(group: GroupSpec, g: &Word) -> Self {
        EndoSpec::new(group, Word::a(1).conjugated_by(g), Word::b(1).conjugated_by(g))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn image_a(&self) -> &Word {
        &self.image_a
    }

    pub fn image_b(&self) -> &Word {
        &self.image_b
    }

    pub fn image(&self, gen: Gen) -> &Word {
        match gen {
            Gen::A => &self.image_a,
            Gen::B => &self.image_b,
        }
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.substitute(&self.image_a, &self.image_b)
    }

    /// `a^-1 φ(b)^m a φ(b)^-n` evaluated on the images.
    pub fn relation_image(&self) -> Word {
        let b = &self.image_b;
        self.image_a
            .inverse()
            .multiply(&b.pow(self.group.m()))
            .multiply(&self.image_a)
            .multiply(&b.pow(-self.group.n()))
    }

    pub fn is_valid(&self) -> bool {
        is_trivial(&self.relation_image(), &self.group)
    }

    /// `|φ(a)|_a`
    pub fn k(&self) -> BigInt {
        self.image_a.exp_sum(Gen::A)
    }

    /// Parses the three-line format
    ///
    /// ```text
    /// group 1 -1
    /// a -> a^3
    /// b -> b^2
    /// ```
    ///
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut group = None;
        let mut image_a = None;
        let mut image_b = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let invalid = |message: String| Error::InvalidSpec { line: line_no, message };
            if let Some(rest) = line.strip_prefix("group") {
                let nums: Vec<&str> = rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
                let [m, n] = nums[..] else {
                    return Err(invalid(format!("expected `group m n`, got {line:?}")));
                };
                let m: i64 = m.parse().map_err(|_| invalid(format!("bad integer {m:?}")))?;
                let n: i64 = n.parse().map_err(|_| invalid(format!("bad integer {n:?}")))?;
                group = Some(GroupSpec::new(m, n)?);
            } else if let Some((lhs, rhs)) = line.split_once("->") {
                let w = parse_word(rhs).map_err(|e| invalid(e.to_string()))?;
                match lhs.trim() {
                    "a" => image_a = Some(w),
                    "b" => image_b = Some(w),
                    other => return Err(invalid(format!("unknown generator {other:?}"))),
                }
            } else {
                return Err(invalid(format!("unrecognized line {line:?}")));
            }
        }
        let missing = |what: &str| Error::InvalidSpec { line: 0, message: format!("missing {what}") };
        Ok(EndoSpec::new(
            group.ok_or_else(|| missing("`group m n` line"))?,
            image_a.ok_or_else(|| missing("image of a"))?,
            image_b.ok_or_else(|| missing("image of b"))?,
        ))
    }
}

impl fmt::Display for EndoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {} {}", self.group.m(), self.group.n())?;
        writeln!(f, "a -> {}", self.image_a)?;
        writeln!(f, "b -> {}", self.image_b)
    }
}

impl FromStr for EndoSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EndoSpec::parse(s)
    }
}

/// A reason a validated endomorphism cannot be injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
}

/// Everything [`endo_validate`] derives from a valid spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedData {
    pub group: GroupSpec,
    /// `|φ(a)|_a`
    pub k: BigInt,
    /// `|φ(b)|_a`
    pub b_exp_sum_a: BigInt,
    pub kernel_preserved: bool,
    pub ab_map: AbelianMap,
    pub kappa_scale: Option<KappaScale>,
    pub diagnostics: Vec<Diagnostic>,
}

impl InducedData {
    pub fn to_json(&self) -> Value {
        let moduli: Vec<String> = self.ab_map.group().moduli().iter().map(ToString::to_string).collect();
        let matrix: Vec<Vec<String>> = self
            .ab_map
            .matrix()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let kappa = match &self.kappa_scale {
            None => Value::Null,
            Some(KappaScale::Scale { d, window }) => json!({ "d": d.to_string(), "window": window }),
            Some(KappaScale::Incompatible { window }) => json!({ "d": Value::Null, "window": window }),
        };
        json!({
            "group": self.group.to_string(),
            "k": self.k.to_string(),
            "b_exp_sum_a": self.b_exp_sum_a.to_string(),
            "kernel_preserved": self.kernel_preserved,
            "ab_map": { "moduli": moduli, "matrix": matrix },
            "kappa_scale": kappa,
            "diagnostics": self.diagnostics.iter().map(|d| json!({ "code": d.code, "message": d.message })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for InducedData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group: {}", self.group)?;
        writeln!(f, "k = |phi(a)|_a = {}", self.k)?;
        writeln!(f, "|phi(b)|_a = {} (kernel preserved: {})", self.b_exp_sum_a, self.kernel_preserved)?;
        writeln!(f, "abelianization {}: {}", self.ab_map.group(), self.ab_map.matrix())?;
        match &self.kappa_scale {
            Some(s) => writeln!(f, "kappa scale: {s}")?,
            None => writeln!(f, "kappa scale: undefined")?,
        }
        for d in &self.diagnostics {
            writeln!(f, "{}: {}", d.code, d.message)?;
        }
        Ok(())
    }
}

/// Checks the relation on the images and derives the induced data.
pub fn endo_validate(spec: &EndoSpec) -> Result<InducedData> {
    endo_validate_with_window(spec, DEFAULT_WINDOW)
}

pub fn endo_validate_with_window(spec: &EndoSpec, window: u32) -> Result<InducedData> {
    let group = spec.group;
    let relation = spec.relation_image();
    if !is_trivial(&relation, &group) {
        return Err(Error::RelationViolated { residue: normal_form(&relation, &group).to_string() });
    }
    let k = spec.k();
    let b_exp_sum_a = spec.image_b.exp_sum(Gen::A);
    let kernel_preserved = b_exp_sum_a.is_zero();
    // m |phi(b)|_a = n |phi(b)|_a forces this whenever m != n
    debug_assert!(group.is_equal_case() || kernel_preserved);

    let kappa_scale = if kernel_preserved { Some(kappa_scale(spec, window)?) } else { None };

    let mut diagnostics = Vec::new();
    if kernel_preserved && !power_constraint_holds(group.m(), group.n(), &k) {
        let (m, n) = (group.m(), group.n());
        let message = if group.is_minus_case() {
            format!("k = {k} is even; an injective endomorphism of B({m},{n}) induces multiplication by an odd number")
        } else {
            format!("k = {k} but n^(k-1) = m^(k-1) fails for (m,n) = ({m},{n}); an injective endomorphism must have k = 1")
        };
        diagnostics.push(Diagnostic { code: "not_injective", message });
    }

    Ok(InducedData {
        group,
        k,
        b_exp_sum_a,
        kernel_preserved,
        ab_map: induced_on_ab(spec)?,
        kappa_scale,
        diagnostics,
    })
}

pub fn endo_apply(spec: &EndoSpec, w: &Word) -> Result<Word> {
    spec.apply(w)
}

/// `s1 ∘ s2`: `a ↦ s1(s2(a))`, `b ↦ s1(s2(b))`.
pub fn endo_compose(s1: &EndoSpec, s2: &EndoSpec) -> Result<EndoSpec> {
    if s1.group != s2.group {
        return Err(Error::GroupMismatch(s1.group.to_string(), s2.group.to_string()));
    }
    Ok(EndoSpec::new(s1.group, s1.apply(&s2.image_a)?, s1.apply(&s2.image_b)?))
}

/// The map induced on `B(m,n) / ker |.|_a = Z`: multiplication by `k`.
pub fn induced_on_z(spec: &EndoSpec) -> Result<BigInt> {
    let b_exp_sum_a = spec.image_b.exp_sum(Gen::A);
    if !b_exp_sum_a.is_zero() {
        return Err(Error::KernelNotPreserved { b_exp_sum: b_exp_sum_a.to_string() });
    }
    Ok(spec.k())
}

/// The abelianization `Z_{|n-m|} + Z` with generators `b̄` (index 0) and
/// `ā` (index 1).
pub fn abelianization(group: &GroupSpec) -> AbelianGroup {
    AbelianGroup::new(vec![group.torsion_modulus(), BigInt::zero()])
}

/// The induced map on the abelianization, columns being the images of
/// `b̄` and `ā`.
pub fn induced_on_ab(spec: &EndoSpec) -> Result<AbelianMap> {
    let column = |w: &Word| [w.exp_sum(Gen::B), w.exp_sum(Gen::A)];
    let [bb, ba] = column(&spec.image_b);
    let [ab, aa] = column(&spec.image_a);
    let matrix = IntMatrix::from_rows(&[vec![bb, ab], vec![ba, aa]])?;
    AbelianMap::new(abelianization(&spec.group), matrix)
}

/// Whether `φ` acts as the identity on the quotient `Z`, i.e. `k = 1` with
/// the kernel preserved.
pub fn induces_identity_on_z(spec: &EndoSpec) -> bool {
    induced_on_z(spec).map(|k| k.is_one()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::britton::are_equal;

    fn g(m: i64, n: i64) -> GroupSpec {
        GroupSpec::new(m, n).unwrap()
    }

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn validate_examples() {
        let klein = EndoSpec::new(g(1, -1), w("a^3"), w("b^2"));
        let data = endo_validate(&klein).unwrap();
        assert_eq!(data.k, big(3));
        assert!(data.kernel_preserved);
        assert!(data.diagnostics.is_empty());

        let bad = EndoSpec::new(g(1, 2), w("a^2"), w("b"));
        assert!(matches!(endo_validate(&bad), Err(Error::RelationViolated { .. })));

        assert!(endo_validate(&EndoSpec::new(g(2, 3), w("a"), w("b^2"))).is_ok());
    }

    #[test]
    fn apply_examples() {
        let id = EndoSpec::identity(g(2, 3));
        let x = w("a b^-2 a^3 b");
        assert_eq!(endo_apply(&id, &x).unwrap(), x);
        let s = EndoSpec::new(g(1, 2), w("a"), w("b^3"));
        let image = endo_apply(&s, &w("a^-1 b a")).unwrap();
        assert_eq!(image, w("a^-1 b^3 a"));
        assert!(are_equal(&image, &w("b^6"), &g(1, 2)));
        let klein = EndoSpec::new(g(1, -1), w("a^3"), w("b^2"));
        assert_eq!(endo_apply(&klein, &w("a b")).unwrap(), w("a^3 b^2"));
    }

    #[test]
    fn compose_examples() {
        let group = g(1, -1);
        let klein = EndoSpec::new(group, w("a^3"), w("b^2"));
        assert_eq!(endo_compose(&EndoSpec::identity(group), &klein).unwrap(), klein);
        let tau = EndoSpec::inner(group, &w("a"));
        let c = endo_compose(&tau, &klein).unwrap();
        assert_eq!(c.image_a(), &w("a^3"));
        assert_eq!(c.image_b(), &w("a b^2 a^-1"));
        assert!(c.is_valid());
        let sq = endo_compose(&klein, &klein).unwrap();
        assert_eq!(endo_validate(&sq).unwrap().k, big(9));
        assert!(matches!(
            endo_compose(&klein, &EndoSpec::identity(g(1, 2))),
            Err(Error::GroupMismatch(..))
        ));
    }

    #[test]
    fn induced_on_z_examples() {
        assert_eq!(induced_on_z(&EndoSpec::new(g(1, 2), w("a"), w("b^3"))).unwrap(), big(1));
        assert_eq!(induced_on_z(&EndoSpec::new(g(1, -1), w("a^3"), w("b^2"))).unwrap(), big(3));
        let s = EndoSpec::new(g(1, 2), w("a b"), w("b^3"));
        assert!(s.is_valid());
        assert_eq!(induced_on_z(&s).unwrap(), big(1));
        let moving = EndoSpec::new(g(2, 2), w("a"), w("a"));
        assert!(moving.is_valid());
        assert!(matches!(induced_on_z(&moving), Err(Error::KernelNotPreserved { .. })));
    }

    #[test]
    fn induced_on_ab_examples() {
        let map = induced_on_ab(&EndoSpec::new(g(1, 3), w("a"), w("b^3"))).unwrap();
        assert_eq!(map.image_of_generator(0), vec![big(1), big(0)]);
        assert_eq!(map.image_of_generator(1), vec![big(0), big(1)]);
        let group = g(2, 5);
        let id = induced_on_ab(&EndoSpec::identity(group)).unwrap();
        assert_eq!(id, AbelianMap::identity(abelianization(&group)));
        let map = induced_on_ab(&EndoSpec::new(g(2, 3), w("a"), w("b^2"))).unwrap();
        assert_eq!(map.image_of_generator(0)[0], big(0));
    }

    #[test]
    fn diagnostics() {
        let s = EndoSpec::new(g(2, -2), w("a^2"), Word::identity());
        let data = endo_validate(&s).unwrap();
        assert_eq!(data.diagnostics.len(), 1);
        assert!(data.diagnostics[0].message.contains("odd"));
        assert!(!EndoSpec::new(g(2, -2), w("a^2"), w("b")).is_valid());
        // the trivial endomorphism has k = 0
        let trivial = EndoSpec::new(g(2, 3), Word::identity(), Word::identity());
        let data = endo_validate(&trivial).unwrap();
        assert_eq!(data.diagnostics[0].code, "not_injective");
        assert!(endo_validate(&EndoSpec::identity(g(2, 3))).unwrap().diagnostics.is_empty());
    }

    #[test]
    fn spec_file_round_trip() {
        let text = "# Klein example\ngroup 1 -1\n\na -> a^3\nb -> b^2  # squared\n";
        let s = EndoSpec::parse(text).unwrap();
        assert_eq!(s, EndoSpec::new(g(1, -1), w("a^3"), w("b^2")));
        assert_eq!(EndoSpec::parse(&s.to_string()).unwrap(), s);
        assert!(matches!(EndoSpec::parse("group 1\na -> a\nb -> b"), Err(Error::InvalidSpec { line: 1, .. })));
        assert!(matches!(EndoSpec::parse("group 1 2\na -> a"), Err(Error::InvalidSpec { .. })));
        assert!(matches!(EndoSpec::parse("group 1 2\nc -> a\nb -> b"), Err(Error::InvalidSpec { line: 2, .. })));
    }
}
