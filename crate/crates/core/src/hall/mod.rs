//! The Ringel-Hall algebra of a type-A quiver over F_p, and its q = 1
//! specialization through interpolated Hall polynomials.

pub mod counting;
pub mod element;
pub mod poly;
pub mod verify;

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Arc;

pub use counting::{flag_degree_bound, PolynomialCounter, SplitCounter, SplitTable};
pub use element::{comultiply_element_at, parse_rational, CoefficientField, HallElement, HallSeries};
pub use poly::HallPolynomial;

use crate::catalog::{IndecompCatalog, ModuleClass};
use crate::error::{Error, Result};

#[derive(Debug)]
enum Backend {
    Prime(SplitCounter),
    Euler(PolynomialCounter),
}

/// Structure constants of one Hall algebra, memoized.
#[derive(Debug)]
pub struct HallAlgebra {
    catalog: Arc<IndecompCatalog>,
    field: CoefficientField,
    backend: Backend,
}

impl HallAlgebra {
    pub fn new(catalog: Arc<IndecompCatalog>, field: CoefficientField) -> Self {
        let backend = match field {
            CoefficientField::Prime(p) => Backend::Prime(SplitCounter::new(Arc::clone(&catalog), p)),
            CoefficientField::Euler => Backend::Euler(PolynomialCounter::new(Arc::clone(&catalog))),
        };
        HallAlgebra { catalog, field, backend }
    }

    pub fn catalog(&self) -> &Arc<IndecompCatalog> {
        &self.catalog
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    /// Coefficient of u_L in u_M * u_N.
    pub fn structure_constant(&self, m: &ModuleClass, n: &ModuleClass, l: &ModuleClass) -> Result<BigRational> {
        match &self.backend {
            Backend::Prime(c) => Ok(BigRational::from_integer(c.hall_count(m, n, l)?.into())),
            Backend::Euler(c) => c.euler_count(m, n, l),
        }
    }

    pub fn count_filtrations(&self, parts: &[ModuleClass], x: &ModuleClass) -> Result<BigRational> {
        match &self.backend {
            Backend::Prime(c) => Ok(BigRational::from_integer(c.count_filtrations(parts, x)?.into())),
            Backend::Euler(c) => Ok(c.hall_polynomial(parts, x)?.euler_value()),
        }
    }

    /// u_M * u_N, complete: every L in the support has dim L = dim M + dim N.
    pub fn basis_product(&self, m: &ModuleClass, n: &ModuleClass) -> Result<HallElement> {
        let mut out = HallElement::zero(self.field);
        let d = &self.catalog.dim_of(m) + &self.catalog.dim_of(n);
        for l in self.catalog.classes_of_dim(&d) {
            let c = self.structure_constant(m, n, &l)?;
            out.add_term(l, c);
        }
        Ok(out)
    }

    fn check(&self, f: &HallElement) -> Result<()> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn multiply(&self, f: &HallElement, g: &HallElement) -> Result<HallElement> {
        self.multiply_capped(f, g, usize::MAX)
    }

    /// Product keeping only terms of total dimension at most `cap`.
    pub fn multiply_capped(&self, f: &HallElement, g: &HallElement, cap: usize) -> Result<HallElement> {
        self.check(f)?;
        self.check(g)?;
        let mut out = HallElement::zero(self.field);
        for (m, a) in f.terms() {
            let tm = self.catalog.dim_of(m).total() as usize;
            for (n, b) in g.terms() {
                if tm + self.catalog.dim_of(n).total() as usize > cap {
                    continue;
                }
                let ab = a * b;
                if m.is_zero() {
                    out.add_term(n.clone(), ab);
                } else if n.is_zero() {
                    out.add_term(m.clone(), ab);
                } else {
                    for (l, c) in self.basis_product(m, n)?.terms() {
                        out.add_term(l.clone(), &ab * c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn multiply_series(&self, f: &HallSeries, g: &HallSeries) -> Result<HallSeries> {
        let cap = f.cap().min(g.cap());
        let e = self.multiply_capped(f.element(), g.element(), cap)?;
        Ok(HallSeries::new(Arc::clone(&self.catalog), cap, e))
    }

    /// Ordered product f_1 * f_2 * ... * f_k of series.
    pub fn product_series(&self, factors: &[HallSeries], cap: usize) -> Result<HallSeries> {
        let mut acc = self.unit_series(cap);
        for f in factors {
            acc = self.multiply_series(&acc, f)?;
        }
        Ok(acc)
    }

    /// u_0, viewed as a series.
    pub fn unit_series(&self, cap: usize) -> HallSeries {
        HallSeries::new(Arc::clone(&self.catalog), cap, HallElement::unit(self.field))
    }

    /// 1_A: coefficient one on every class, the zero class included.
    pub fn all_ones(&self, cap: usize) -> HallSeries {
        HallSeries::from_fn(Arc::clone(&self.catalog), self.field, cap, |_| Ok(BigRational::one()))
            .expect("constant oracle")
    }

    /// Characteristic series of the classes satisfying a predicate.
    pub fn characteristic<F>(&self, cap: usize, mut pred: F) -> Result<HallSeries>
    where
        F: FnMut(&ModuleClass) -> Result<bool>,
    {
        HallSeries::from_fn(Arc::clone(&self.catalog), self.field, cap, |k| {
            Ok(if pred(k)? { BigRational::one() } else { BigRational::zero() })
        })
    }

    /// Truncated exp(x) = Σ x^n / n!, for x vanishing on the zero class.
    pub fn exp_series(&self, x: &HallSeries) -> Result<HallSeries> {
        if !x.get(&ModuleClass::zero())?.is_zero() {
            return Err(Error::BadConstantTerm("exp"));
        }
        let cap = x.cap();
        let mut out = self.unit_series(cap);
        let mut power = self.unit_series(cap);
        for n in 1..=cap {
            power = self.multiply_series(&power, x)?;
            if power.element().is_zero() {
                break;
            }
            let inv_fact = BigRational::one() / BigRational::from_integer(factorial(n).into());
            out = out.add(&power.scale(&inv_fact))?;
        }
        Ok(out)
    }

    /// Truncated log(y) = Σ (-1)^(n+1) (y - 1)^n / n, for y with constant term 1.
    pub fn log_series(&self, y: &HallSeries) -> Result<HallSeries> {
        if !y.get(&ModuleClass::zero())?.is_one() {
            return Err(Error::BadConstantTerm("log"));
        }
        let cap = y.cap();
        let x = y.sub(&self.unit_series(cap))?;
        let mut out = HallSeries::new(Arc::clone(&self.catalog), cap, HallElement::zero(self.field));
        let mut power = self.unit_series(cap);
        for n in 1..=cap {
            power = self.multiply_series(&power, &x)?;
            if power.element().is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&BigRational::new(sign.into(), (n as i64).into())))?;
        }
        Ok(out)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
