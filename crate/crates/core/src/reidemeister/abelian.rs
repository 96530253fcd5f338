//! Twisted conjugacy in finitely generated abelian groups, where the classes
//! of `α ~ g(τ) + α - f(τ)` are the cosets of `im(g - f)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::certificate::{Certificate, Invariant, ReidemeisterOutcome, ScaleCheck, Witness, WITNESS_COUNT};
use super::matrix::{snf, IntMatrix};
use crate::error::{Error, Result};

/// `Z_{d_1} ⊕ ... ⊕ Z_{d_k}` where a modulus of zero stands for `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<BigInt>) -> Self {
        AbelianGroup { moduli: moduli.into_iter().map(|d| d.abs()).collect() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { moduli: vec![BigInt::zero(); rank] }
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn generators(&self) -> usize {
        self.moduli.len()
    }

    /// Canonical coordinates: torsion coordinates reduced into `0..d`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .zip(&self.moduli)
            .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
            .collect()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .moduli
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z_{d}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// An endomorphism of an [`AbelianGroup`]; column `j` is the image of the
/// `j`-th generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianMap {
    group: AbelianGroup,
    matrix: IntMatrix,
}

impl AbelianMap {
    pub fn new(group: AbelianGroup, matrix: IntMatrix) -> Result<Self> {
        let k = group.generators();
        if matrix.rows() != k || matrix.cols() != k {
            return Err(Error::ShapeMismatch(format!(
                "a map of {group} needs a {k}x{k} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let mut reduced = IntMatrix::zeros(k, k);
        for j in 0..k {
            let col = group.reduce(&matrix.column(j));
            // a generator of order d must map to an element killed by d
            let d = &group.moduli[j];
            if !d.is_zero() {
                let scaled: Vec<BigInt> = col.iter().map(|x| x * d).collect();
                if !group.is_zero_element(&scaled) {
                    return Err(Error::ShapeMismatch(format!(
                        "generator {j} has order {d} but its image does not"
                    )));
                }
            }
            for (i, x) in col.into_iter().enumerate() {
                matrix_set(&mut reduced, i, j, x);
            }
        }
        Ok(AbelianMap { group, matrix: reduced })
    }

    pub fn identity(group: AbelianGroup) -> Self {
        let k = group.generators();
        AbelianMap::new(group, IntMatrix::identity(k)).expect("identity is well defined")
    }

    /// Multiplication by `c`.
    pub fn scalar(group: AbelianGroup, c: i64) -> Result<Self> {
        let k = group.generators();
        AbelianMap::new(group, IntMatrix::diagonal(&vec![BigInt::from(c); k]))
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn image_of_generator(&self, j: usize) -> Vec<BigInt> {
        self.matrix.column(j)
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let k = self.group.generators();
        let out: Vec<BigInt> = (0..k)
            .map(|i| (0..k).map(|j| self.matrix.get(i, j) * &v[j]).sum())
            .collect();
        self.group.reduce(&out)
    }
}

fn matrix_set(m: &mut IntMatrix, i: usize, j: usize, v: BigInt) {
    m.set(i, j, v);
}

/// Number of classes of `α ~ g(τ) + α - f(τ)`, i.e. `|coker(g - f)|`.
///
/// The group is presented as `Z^k / diag(d)`, so the cokernel is
/// `Z^k / ⟨columns of g - f, d_i e_i⟩`, read off from one Smith normal
/// form. An infinite cokernel yields a functional `λ` vanishing on that
/// lattice together with witnesses on which it is injective.
pub fn reidemeister_abelian(f: &AbelianMap, g: &AbelianMap) -> Result<ReidemeisterOutcome> {
    if f.group != g.group {
        return Err(Error::ShapeMismatch(format!("maps act on {} and {}", f.group, g.group)));
    }
    let group = &f.group;
    let k = group.generators();
    let h = g.matrix.sub(&f.matrix)?;
    let relations = h.hstack(&IntMatrix::diagonal(group.moduli()))?;
    let s = snf(&relations);
    let rank = s.rank();
    if rank == k {
        return Ok(ReidemeisterOutcome::Finite(s.diagonal.iter().take(k).product()));
    }

    // rows of U past the rank annihilate the relation lattice
    let lambda: Vec<BigInt> = s.u.row(rank).to_vec();
    let coord = lambda
        .iter()
        .position(|x| !x.is_zero())
        .expect("a row of a unimodular matrix is nonzero");
    let eval = |v: &[BigInt]| -> BigRational {
        BigRational::from_integer(lambda.iter().zip(v).map(|(l, x)| l * x).sum())
    };

    let mut scale_checks = Vec::with_capacity(k);
    for j in 0..k {
        scale_checks.push(ScaleCheck::new(
            format!("lambda(g(e{j})) = lambda(f(e{j}))"),
            eval(&g.image_of_generator(j)),
            eval(&f.image_of_generator(j)),
        ));
    }
    for (j, d) in group.moduli().iter().enumerate() {
        if !d.is_zero() {
            let mut v = vec![BigInt::zero(); k];
            v[j] = d.clone();
            scale_checks.push(ScaleCheck::new(
                format!("lambda({d} e{j}) = 0"),
                eval(&v),
                BigRational::zero(),
            ));
        }
    }

    let mut step = vec![BigInt::zero(); k];
    step[coord] = BigInt::from(1);
    let mut first_witnesses = Vec::with_capacity(WITNESS_COUNT);
    let mut values = Vec::with_capacity(WITNESS_COUNT);
    for j in 0..WITNESS_COUNT {
        let mut v = vec![BigInt::zero(); k];
        v[coord] = BigInt::from(j);
        values.push(eval(&v));
        first_witnesses.push(Witness::Vector(v));
    }
    let cert = Certificate {
        invariant: Invariant::Functional(lambda),
        scale_checks,
        witness_base: Witness::Vector(vec![BigInt::zero(); k]),
        witness_step: Witness::Vector(step),
        first_witnesses,
        values,
    };
    debug_assert!(cert.is_consistent());
    Ok(ReidemeisterOutcome::Infinite(Box::new(cert)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn z() -> AbelianGroup {
        AbelianGroup::free(1)
    }

    fn count(outcome: ReidemeisterOutcome) -> Option<i64> {
        match outcome {
            ReidemeisterOutcome::Finite(n) => Some(i64::try_from(n).unwrap()),
            _ => None,
        }
    }

    #[test]
    fn examples() {
        let id = AbelianMap::identity(z());
        let triple = AbelianMap::scalar(z(), 3).unwrap();
        assert_eq!(count(reidemeister_abelian(&id, &triple).unwrap()), Some(2));
        let out = reidemeister_abelian(&id, &id).unwrap();
        assert!(out.certificate().unwrap().is_consistent());
        let z2 = AbelianGroup::new(vec![BigInt::from(2)]);
        let id2 = AbelianMap::identity(z2.clone());
        let one2 = AbelianMap::scalar(z2, 1).unwrap();
        assert_eq!(count(reidemeister_abelian(&id2, &one2).unwrap()), Some(2));
    }

    #[test]
    fn shape_mismatch() {
        let a = AbelianMap::identity(z());
        let b = AbelianMap::identity(AbelianGroup::free(2));
        assert!(matches!(reidemeister_abelian(&a, &b), Err(Error::ShapeMismatch(_))));
        let z2 = AbelianGroup::new(vec![BigInt::from(2)]);
        // Z_2 -> Z_3 style ill-defined images are rejected
        let mixed = AbelianGroup::new(vec![BigInt::from(2), BigInt::zero()]);
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        assert!(AbelianMap::new(mixed, m).is_err());
        assert!(AbelianMap::new(z2, IntMatrix::identity(2)).is_err());
    }

    /// Brute-force class count for finite groups: orbit enumeration over all
    /// elements under `α -> α + (g - f)(e_j)`.
    fn brute_force(f: &AbelianMap, g: &AbelianMap) -> usize {
        let moduli: Vec<i64> = f.group().moduli().iter().map(|d| i64::try_from(d).unwrap()).collect();
        let k = moduli.len();
        let mut elements = vec![vec![]];
        for &d in &moduli {
            elements = elements
                .into_iter()
                .flat_map(|v: Vec<i64>| (0..d).map(move |x| [v.clone(), vec![x]].concat()))
                .collect();
        }
        let steps: Vec<Vec<BigInt>> = (0..k)
            .map(|j| {
                let gj = g.image_of_generator(j);
                let fj = f.image_of_generator(j);
                gj.iter().zip(&fj).map(|(a, b)| a - b).collect()
            })
            .collect();
        let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
        let mut classes = 0;
        for e in elements {
            let e: Vec<BigInt> = e.into_iter().map(BigInt::from).collect();
            if seen.contains(&e) {
                continue;
            }
            classes += 1;
            let mut stack = vec![e.clone()];
            seen.insert(e);
            while let Some(x) = stack.pop() {
                for s in &steps {
                    let y = f.group().reduce(&x.iter().zip(s).map(|(a, b)| a + b).collect::<Vec<_>>());
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
        }
        classes
    }

    #[test]
    fn finite_groups_match_brute_force() {
        let group = AbelianGroup::new(vec![BigInt::from(4), BigInt::from(6)]);
        let mats = [
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![3, 0], vec![0, 5]],
            vec![vec![1, 2], vec![3, 1]],
            vec![vec![2, 0], vec![3, 2]],
            vec![vec![0, 0], vec![0, 0]],
        ];
        for mf in &mats {
            for mg in &mats {
                let (Ok(f), Ok(g)) = (
                    AbelianMap::new(group.clone(), IntMatrix::from_rows(mf).unwrap()),
                    AbelianMap::new(group.clone(), IntMatrix::from_rows(mg).unwrap()),
                ) else {
                    continue;
                };
                let expected = brute_force(&f, &g);
                assert_eq!(count(reidemeister_abelian(&f, &g).unwrap()), Some(expected as i64));
            }
        }
    }

    #[test]
    fn mixed_torsion_and_free() {
        // Z_2 + Z with f = id and g: (x, y) -> (x + y, 3y)
        let group = AbelianGroup::new(vec![BigInt::from(2), BigInt::zero()]);
        let f = AbelianMap::identity(group.clone());
        let g = AbelianMap::new(group, IntMatrix::from_rows(&[vec![1, 1], vec![0, 3]]).unwrap()).unwrap();
        // g - f = [[0,1],[0,2]]; (x, y) -> 2x - y mod 4 identifies Z_2 + Z / <(1,2)> with Z_4
        assert_eq!(count(reidemeister_abelian(&f, &g).unwrap()), Some(4));
    }
}
