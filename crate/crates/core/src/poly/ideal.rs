use super::{parse_polynomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::Field;

/// A homogeneous ideal of `S = k[x_0, ..., x_n]` given by generators.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    field: F,
    names: Vec<String>,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    /// Generators must be nonzero, homogeneous, and in `names.len()` variables.
    pub fn new(field: F, names: Vec<String>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        if names.len() < 2 {
            return Err(Error::InvalidIdeal(
                "need at least two variables (projective dimension >= 1)".into(),
            ));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::InvalidIdeal(format!(
                    "variable `{a}` declared twice"
                )));
            }
        }
        if generators.is_empty() {
            return Err(Error::InvalidIdeal("no generators".into()));
        }
        for (index, g) in generators.iter().enumerate() {
            if g.nvars() != names.len() {
                return Err(Error::InvalidIdeal(format!(
                    "generator {index} lives in a ring with {} variables",
                    g.nvars()
                )));
            }
            if g.is_zero() {
                return Err(Error::InvalidIdeal(format!("generator {index} is zero")));
            }
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneousGenerator {
                    index,
                    text: g.render(&names),
                });
            }
        }
        Ok(Self {
            field,
            names,
            generators,
        })
    }

    /// Parses each generator string with [`parse_polynomial`].
    pub fn parse(
        field: F,
        names: &[impl AsRef<str>],
        generators: &[impl AsRef<str>],
    ) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let gens = generators
            .iter()
            .map(|g| parse_polynomial(g.as_ref(), &names, &field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, names, gens)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// The projective dimension `n` of the ambient `P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.names.len() - 1
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators
            .iter()
            .map(|g| g.degree().expect("nonzero generator"))
            .collect()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generator_degrees().into_iter().max().unwrap_or(0)
    }

    /// The ideal generated by all products `g_i * g_j`, `i <= j`.
    pub fn square(&self) -> Self {
        let mut gens = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i..] {
                gens.push(a.multiply(b));
            }
        }
        Self {
            field: self.field.clone(),
            names: self.names.clone(),
            generators: gens,
        }
    }

    pub fn render_generators(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.render(&self.names))
            .collect()
    }
}
