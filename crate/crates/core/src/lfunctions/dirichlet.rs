use std::collections::BTreeMap;

use num_complex::Complex;

use super::hurwitz::{digamma, hurwitz_zeta_eval, EvalOptions, Evaluation};
use crate::arith::{factorize, CyclotomicField};
use crate::error::{Error, Result};
use crate::fields::DirichletCharacter;
use crate::scalar::Real;

/// `L(s, chi)` for a primitive character.
pub fn dirichlet_l<T: Real>(
    s: Complex<T>,
    chi: &DirichletCharacter,
    opts: &EvalOptions,
) -> Result<Complex<T>> {
    dirichlet_l_eval(s, chi, opts).map(|e| e.value)
}

pub fn dirichlet_l_eval<T: Real>(
    s: Complex<T>,
    chi: &DirichletCharacter,
    opts: &EvalOptions,
) -> Result<Evaluation<T>> {
    if !chi.is_primitive() {
        return Err(Error::Precondition(format!(
            "character modulo {} is not primitive",
            chi.modulus()
        )));
    }
    let table = PrimitiveTable::new(chi);
    table.eval(s, opts)
}

/// `L(s, chi)` for a possibly imprimitive character: the primitive value times
/// the Euler factors removed at primes dividing the modulus.
pub fn dirichlet_l_imprimitive<T: Real>(
    s: Complex<T>,
    chi: &DirichletCharacter,
    opts: &EvalOptions,
) -> Result<Evaluation<T>> {
    let prim = chi.primitive()?;
    let mut e = dirichlet_l_eval(s, &prim, opts)?;
    let f = prim.modulus();
    for (p, _) in factorize(chi.modulus()) {
        if f % p == 0 {
            continue;
        }
        let v: Complex<T> = prim.value(p);
        let ps = (-s * T::of(p as f64).ln()).exp();
        let factor = Complex::new(T::one(), T::zero()) - v * ps;
        e.value = e.value * factor;
        e.error_bound *= factor.norm().to_f64_lossy();
    }
    Ok(e)
}

/// A primitive character with its values precomputed.
#[derive(Clone, Debug)]
struct PrimitiveTable {
    modulus: u64,
    principal: bool,
    values: Vec<(u64, Complex<f64>)>,
}

impl PrimitiveTable {
    fn new(chi: &DirichletCharacter) -> Self {
        let m = chi.modulus();
        let values = (1..=m)
            .filter_map(|r| {
                let v: Complex<f64> = chi.value(r);
                (v.norm() > 0.5).then_some((r, v))
            })
            .collect();
        PrimitiveTable {
            modulus: m,
            principal: chi.is_principal(),
            values,
        }
    }

    fn eval<T: Real>(&self, s: Complex<T>, opts: &EvalOptions) -> Result<Evaluation<T>> {
        let hz = hurwitz_row(self.modulus, s, opts)?;
        self.combine(s, &hz)
    }

    fn combine<T: Real>(&self, s: Complex<T>, hz: &HurwitzRow<T>) -> Result<Evaluation<T>> {
        let f = self.modulus;
        let at_one = s.re == T::one() && s.im == T::zero();
        if at_one {
            if self.principal {
                return Err(Error::Pole("1".into()));
            }
            // L(1, chi) = -(1/f) sum chi(r) psi(r/f)
            let mut acc = Complex::new(T::zero(), T::zero());
            for &(r, v) in &self.values {
                let psi = digamma(T::of(r as f64) / T::of(f as f64))?;
                acc = acc + cplx::<T>(v) * psi;
            }
            let bound = 64.0 * f64::EPSILON.max(T::epsilon().to_f64_lossy()) * f as f64;
            return Ok(Evaluation {
                value: -acc / T::of(f as f64),
                error_bound: bound,
            });
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        let mut err = 0.0;
        for &(r, v) in &self.values {
            let e = &hz.values[(r - 1) as usize];
            acc = acc + cplx::<T>(v) * e.value;
            err += e.error_bound;
        }
        let fs = (-s * T::of(f as f64).ln()).exp();
        let scale = fs.norm().to_f64_lossy();
        Ok(Evaluation {
            value: acc * fs,
            error_bound: err * scale,
        })
    }
}

fn cplx<T: Real>(v: Complex<f64>) -> Complex<T> {
    Complex::new(T::of(v.re), T::of(v.im))
}

/// `zeta(s, r/f)` for `r = 1..=f`, or nothing at `s = 1`.
struct HurwitzRow<T> {
    values: Vec<Evaluation<T>>,
}

fn hurwitz_row<T: Real>(f: u64, s: Complex<T>, opts: &EvalOptions) -> Result<HurwitzRow<T>> {
    if s.re == T::one() && s.im == T::zero() {
        return Ok(HurwitzRow { values: Vec::new() });
    }
    let values = (1..=f)
        .map(|r| hurwitz_zeta_eval(s, T::of(r as f64) / T::of(f as f64), opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(HurwitzRow { values })
}

/// Dedekind zeta function of a cyclotomic field (or its real subfield) as the
/// product of the L-functions of its characters.
#[derive(Clone, Debug)]
pub struct CyclotomicZeta {
    field: CyclotomicField,
    /// Primitive characters grouped by conductor.
    by_conductor: BTreeMap<u64, Vec<PrimitiveTable>>,
}

impl CyclotomicZeta {
    pub fn new(field: CyclotomicField) -> Result<Self> {
        let d = field.conductor.max(1);
        let mut by_conductor: BTreeMap<u64, Vec<PrimitiveTable>> = BTreeMap::new();
        for chi in DirichletCharacter::all(d)? {
            if field.real && !chi.is_even() {
                continue;
            }
            let prim = chi.primitive()?;
            by_conductor
                .entry(prim.modulus())
                .or_default()
                .push(PrimitiveTable::new(&prim));
        }
        Ok(CyclotomicZeta {
            field,
            by_conductor,
        })
    }

    pub fn field(&self) -> CyclotomicField {
        self.field
    }

    pub fn eval<T: Real>(&self, s: Complex<T>, opts: &EvalOptions) -> Result<Evaluation<T>> {
        if s.re == T::one() && s.im == T::zero() {
            return Err(Error::Pole("1".into()));
        }
        let mut value = Complex::new(T::one(), T::zero());
        let mut rel = 0.0;
        for (&f, chars) in &self.by_conductor {
            let row = hurwitz_row(f, s, opts)?;
            for c in chars {
                let e = c.combine(s, &row)?;
                let mag = e.value.norm().to_f64_lossy();
                rel += if mag > 0.0 {
                    e.error_bound / mag
                } else {
                    f64::INFINITY
                };
                value = value * e.value;
            }
        }
        let error_bound = value.norm().to_f64_lossy() * rel;
        Ok(Evaluation { value, error_bound })
    }

    /// `lim_{s -> 1} (s - 1) zeta_K(s)`: the product of `L(1, chi)` over
    /// nontrivial characters.
    pub fn residue(&self) -> Result<Evaluation<f64>> {
        let mut value = Complex::new(1.0, 0.0);
        let mut rel = 0.0;
        let one = Complex::new(1.0, 0.0);
        let empty = HurwitzRow { values: Vec::new() };
        for chars in self.by_conductor.values() {
            for c in chars.iter().filter(|c| !c.principal) {
                let e = c.combine(one, &empty)?;
                rel += e.error_bound / e.value.norm();
                value *= e.value;
            }
        }
        Ok(Evaluation {
            value,
            error_bound: value.norm() * rel,
        })
    }
}

/// `zeta_{Q(zeta_d)}(s)`.
pub fn dedekind_zeta_cyclotomic<T: Real>(
    d: u64,
    s: Complex<T>,
    opts: &EvalOptions,
) -> Result<Complex<T>> {
    CyclotomicZeta::new(CyclotomicField::full(d))?
        .eval(s, opts)
        .map(|e| e.value)
}

/// Residue of `zeta_{Q(zeta_d)}` at `s = 1`.
pub fn dedekind_residue(d: u64) -> Result<f64> {
    Ok(CyclotomicZeta::new(CyclotomicField::full(d))?
        .residue()?
        .value
        .re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_chi4_at_one() {
        let chi = DirichletCharacter::all(4)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_principal())
            .unwrap();
        let v: Complex<f64> =
            dirichlet_l(Complex::new(1.0, 0.0), &chi, &EvalOptions::default()).unwrap();
        assert!((v.re - std::f64::consts::FRAC_PI_4).abs() < 1e-13);
    }

    #[test]
    fn residue_q_i() {
        assert!((dedekind_residue(4).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-13);
        assert_eq!(dedekind_residue(2).unwrap(), 1.0);
    }

    #[test]
    fn imprimitive_requires_flag() {
        let chi = DirichletCharacter::principal(3).unwrap();
        assert!(dirichlet_l::<f64>(Complex::new(2.0, 0.0), &chi, &EvalOptions::default()).is_err());
        let e =
            dirichlet_l_imprimitive::<f64>(Complex::new(2.0, 0.0), &chi, &EvalOptions::default())
                .unwrap();
        let expect = std::f64::consts::PI.powi(2) / 6.0 * (1.0 - 1.0 / 9.0);
        assert!((e.value.re - expect).abs() < 1e-13);
    }
}
