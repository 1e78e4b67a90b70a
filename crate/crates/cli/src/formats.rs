//! Bit-exact on-disk formats: complexes as `{"n": .., "facets": [[..], ..]}`
//! with 1-based sorted vertex lists, ideals as `{"n": .., "ring":
//! "exterior"|"symmetric", "generators": [..]}` where exterior generators
//! are index lists and symmetric generators are exponent vectors. Output
//! facets are sorted lexicographically.

use serde::{Deserialize, Serialize};
use shiftalg::exterior::{ExtGradedIdeal, ExtMonomial, ExtTermOrder};
use shiftalg::{Error, Fp, Result, SimplicialComplex, SymIdeal, SymMonomial};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn from_complex(c: &SimplicialComplex) -> Self {
        let mut facets = c.facet_lists();
        facets.sort();
        ComplexFile { n: c.n(), facets }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        if self.n < 1 || self.n > 16 {
            return Err(Error::InvalidInput(format!(
                "vertex count {} outside 1..=16",
                self.n
            )));
        }
        SimplicialComplex::from_facets(self.n, &self.facets)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealFile {
    pub n: usize,
    pub ring: String,
    pub generators: Vec<Vec<u64>>,
}

pub enum ParsedIdeal {
    Exterior(ExtGradedIdeal),
    Symmetric(SymIdeal),
}

impl IdealFile {
    pub fn parse(&self, fp: Fp, order: ExtTermOrder) -> Result<ParsedIdeal> {
        if self.n < 1 || self.n > 16 {
            return Err(Error::InvalidInput(format!(
                "variable count {} outside 1..=16",
                self.n
            )));
        }
        match self.ring.as_str() {
            "exterior" => {
                let mut gens = Vec::with_capacity(self.generators.len());
                for g in &self.generators {
                    let mut indices = Vec::with_capacity(g.len());
                    for &v in g {
                        if v < 1 || v as usize > self.n {
                            return Err(Error::InvalidInput(format!(
                                "generator index {v} outside [1, {}]",
                                self.n
                            )));
                        }
                        indices.push(v as usize);
                    }
                    indices.sort_unstable();
                    indices.dedup();
                    gens.push(ExtMonomial::from_indices(&indices));
                }
                Ok(ParsedIdeal::Exterior(
                    ExtGradedIdeal::from_monomial_generators(fp, order, self.n, &gens),
                ))
            }
            "symmetric" => {
                let mut gens = Vec::with_capacity(self.generators.len());
                for g in &self.generators {
                    if g.len() != self.n {
                        return Err(Error::InvalidInput(format!(
                            "exponent vector {:?} must have length {}",
                            g, self.n
                        )));
                    }
                    gens.push(SymMonomial(g.iter().map(|&e| e as u32).collect()));
                }
                Ok(ParsedIdeal::Symmetric(SymIdeal::new(self.n, gens)))
            }
            other => Err(Error::InvalidInput(format!(
                "unknown ring {other:?}; expected \"exterior\" or \"symmetric\""
            ))),
        }
    }

    pub fn from_exterior(j: &ExtGradedIdeal) -> Result<Self> {
        let mut generators: Vec<Vec<u64>> = j
            .minimal_generators()?
            .iter()
            .map(|m| m.indices().iter().map(|&i| i as u64).collect())
            .collect();
        generators.sort();
        Ok(IdealFile {
            n: j.n(),
            ring: "exterior".into(),
            generators,
        })
    }

    pub fn from_symmetric(i: &SymIdeal) -> Self {
        let mut generators: Vec<Vec<u64>> = i
            .minimal_generators()
            .iter()
            .map(|m| m.0.iter().map(|&e| e as u64).collect())
            .collect();
        generators.sort();
        IdealFile {
            n: i.n(),
            ring: "symmetric".into(),
            generators,
        }
    }
}
