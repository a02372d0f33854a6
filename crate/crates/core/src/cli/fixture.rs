//! JSON fixtures. Matrices carry explicit `rows`/`cols` so empty degrees round-trip; entries
//! are row-major and may be negative (reduced mod p on load).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::PrimeFieldMatrix;
use crate::morcat::MorComplex;
use crate::ncomplex::{ChainMapN, NComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFixture {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl MatrixFixture {
    fn load(&self, p: u32) -> Result<PrimeFieldMatrix> {
        PrimeFieldMatrix::from_i64(p, self.rows, self.cols, &self.data)
    }
}

impl From<&PrimeFieldMatrix> for MatrixFixture {
    fn from(m: &PrimeFieldMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), data: m.entries().iter().map(|&v| v as i64).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NComplexFixture {
    pub p: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub lo: i64,
    pub hi: i64,
    pub dims: Vec<usize>,
    /// `diffs[k]` leaves degree `lo + k`.
    pub diffs: Vec<MatrixFixture>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFixture {
    pub source: NComplexFixture,
    pub target: NComplexFixture,
    /// Components on the overlap of the two windows, starting at `lo`.
    pub lo: i64,
    pub maps: Vec<MatrixFixture>,
}

/// Coupling block `X_v^degree -> X_u^{degree+1}`, components numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockFixture {
    pub u: usize,
    pub v: usize,
    pub degree: i64,
    pub matrix: MatrixFixture,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorFixture {
    pub p: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub lo: i64,
    pub hi: i64,
    /// `comp_dims[k][u-1] = dim X_u^{lo+k}`.
    pub comp_dims: Vec<Vec<usize>>,
    /// Omitted blocks are zero.
    pub blocks: Vec<BlockFixture>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Fixture {
    Ncomplex(NComplexFixture),
    Map(MapFixture),
    Mor(MorFixture),
}

/// A loaded and validated fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    NComplex(NComplex),
    Map(ChainMapN),
    Mor(MorComplex),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::NComplex(_) => "ncomplex",
            Object::Map(_) => "map",
            Object::Mor(_) => "mor",
        }
    }
}

fn window_len(lo: i64, hi: i64, what: &str) -> Result<usize> {
    if hi < lo - 1 {
        return Err(Error::ShapeMismatch(format!("{what}: hi = {hi} below lo - 1 = {}", lo - 1)));
    }
    Ok((hi - lo + 1) as usize)
}

impl NComplexFixture {
    pub fn load(&self) -> Result<NComplex> {
        let len = window_len(self.lo, self.hi, "ncomplex")?;
        if self.dims.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "window [{}, {}] needs {len} dims, got {}",
                self.lo,
                self.hi,
                self.dims.len()
            )));
        }
        let diffs = self.diffs.iter().map(|m| m.load(self.p)).collect::<Result<Vec<_>>>()?;
        NComplex::new(self.n, self.p, self.lo, self.dims.clone(), diffs)
    }
}

impl From<&NComplex> for NComplexFixture {
    fn from(x: &NComplex) -> Self {
        Self {
            p: x.p(),
            n: x.n(),
            lo: x.lo(),
            hi: x.hi(),
            dims: x.dims().to_vec(),
            diffs: (x.lo()..x.hi()).map(|i| MatrixFixture::from(&x.d(i))).collect(),
        }
    }
}

impl MapFixture {
    pub fn load(&self) -> Result<ChainMapN> {
        let (x, y) = (self.source.load()?, self.target.load()?);
        let maps = self.maps.iter().map(|m| m.load(x.p())).collect::<Result<Vec<_>>>()?;
        let (lo, hi) = (x.lo().max(y.lo()), x.hi().min(y.hi()));
        let len = window_len(lo, hi, "map").unwrap_or(0);
        if (len > 0 && self.lo != lo) || maps.len() != len {
            return Err(Error::ShapeMismatch(format!("map needs {len} components starting at degree {lo}")));
        }
        ChainMapN::new(&x, &y, |i| maps[(i - lo) as usize].clone())
    }
}

impl From<&ChainMapN> for MapFixture {
    fn from(f: &ChainMapN) -> Self {
        let (lo, hi) = f.window();
        Self {
            source: f.source().into(),
            target: f.target().into(),
            lo,
            maps: (lo..=hi).map(|i| MatrixFixture::from(&f.at(i))).collect(),
        }
    }
}

impl MorFixture {
    pub fn load(&self) -> Result<MorComplex> {
        let len = window_len(self.lo, self.hi, "mor")?;
        if self.comp_dims.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "window [{}, {}] needs {len} rows of comp_dims",
                self.lo, self.hi
            )));
        }
        if self.n < 2 {
            return Err(Error::OutOfRange("Mor complexes need N >= 2".into()));
        }
        let m = self.n - 1;
        if let Some(row) = self.comp_dims.iter().find(|r| r.len() != m) {
            return Err(Error::ShapeMismatch(format!("comp_dims row {row:?} needs {m} entries")));
        }
        let offs = |k: usize, u: usize| self.comp_dims[k][..u].iter().sum::<usize>();
        let totals: Vec<usize> = self.comp_dims.iter().map(|r| r.iter().sum()).collect();
        let mut diffs: Vec<PrimeFieldMatrix> =
            (1..len).map(|k| PrimeFieldMatrix::zeros(self.p, totals[k], totals[k - 1])).collect();
        for b in &self.blocks {
            let k = b.degree - self.lo;
            if !(1..=m).contains(&b.u) || !(1..=m).contains(&b.v) || k < 0 || k + 1 >= len as i64 {
                return Err(Error::OutOfRange(format!("block ({}, {}) at degree {}", b.u, b.v, b.degree)));
            }
            let k = k as usize;
            let mat = b.matrix.load(self.p)?;
            let shape = (self.comp_dims[k + 1][b.u - 1], self.comp_dims[k][b.v - 1]);
            if mat.shape() != shape {
                return Err(Error::ShapeMismatch(format!(
                    "block ({}, {}) at degree {} is {:?}, expected {shape:?}",
                    b.u,
                    b.v,
                    b.degree,
                    mat.shape()
                )));
            }
            diffs[k].add_block(offs(k + 1, b.u - 1), offs(k, b.v - 1), &mat);
        }
        MorComplex::new(self.n, self.p, self.lo, self.comp_dims.clone(), diffs)
    }
}

impl From<&MorComplex> for MorFixture {
    fn from(x: &MorComplex) -> Self {
        let m = x.components();
        let mut blocks = Vec::new();
        for i in x.lo()..x.hi() {
            for u in 1..=m {
                for v in u..=m {
                    let b = x.block(u, v, i);
                    if !b.is_zero() {
                        blocks.push(BlockFixture { u, v, degree: i, matrix: (&b).into() });
                    }
                }
            }
        }
        Self {
            p: x.p(),
            n: x.n(),
            lo: x.lo(),
            hi: x.hi(),
            comp_dims: (x.lo()..=x.hi()).map(|i| x.comp_dims(i)).collect(),
            blocks,
        }
    }
}

impl From<&NComplex> for Fixture {
    fn from(x: &NComplex) -> Self {
        Fixture::Ncomplex(x.into())
    }
}

impl From<&ChainMapN> for Fixture {
    fn from(f: &ChainMapN) -> Self {
        Fixture::Map(f.into())
    }
}

impl From<&MorComplex> for Fixture {
    fn from(x: &MorComplex) -> Self {
        Fixture::Mor(x.into())
    }
}

impl Fixture {
    /// Parse JSON text; syntax and field errors carry the line number.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixtures serialize")
    }

    /// Build and validate the described object.
    pub fn load(&self) -> Result<Object> {
        Ok(match self {
            Fixture::Ncomplex(f) => Object::NComplex(f.load()?),
            Fixture::Map(f) => Object::Map(f.load()?),
            Fixture::Mor(f) => Object::Mor(f.load()?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncomplex::mu;
    use crate::sample::{random_chain_map, random_mor_complex, random_ncomplex, Rng64};
    use rand::SeedableRng;

    #[test]
    fn round_trips() {
        let mut rng = Rng64::seed_from_u64(5);
        for n in 2..=4 {
            let x = random_ncomplex(&mut rng, n, 101, 3, 2 * n);
            let y = random_ncomplex(&mut rng, n, 101, 3, 2 * n);
            let f = random_chain_map(&mut rng, &x, &y);
            let m = random_mor_complex(&mut rng, n, 101, 3, 2 * n);
            for (fx, obj) in [
                (Fixture::from(&x), Object::NComplex(x.clone())),
                (Fixture::from(&f), Object::Map(f.clone())),
                (Fixture::from(&m), Object::Mor(m.clone())),
            ] {
                assert_eq!(Fixture::parse(&fx.to_json()).unwrap().load().unwrap(), obj);
            }
        }
        let z = NComplex::zero(3, 7);
        assert_eq!(Fixture::parse(&Fixture::from(&z).to_json()).unwrap().load().unwrap(), Object::NComplex(z));
    }

    #[test]
    fn errors_are_located() {
        let text = Fixture::from(&mu(3, 101, 2, 1, 1).unwrap()).to_json();
        let cut = &text[..text.len() / 2];
        assert!(matches!(Fixture::parse(cut), Err(Error::Parse { line, .. }) if line > 1));
        let bad = "{\n  \"kind\": \"ncomplex\",\n  \"p\": 101,\n  \"N\": 3,\n  \"lo\": 0,\n  \"hi\": 0,\n  \"dims\": [1],\n  \"diffs\": [],\n  \"extra\": 1\n}";
        assert!(matches!(Fixture::parse(bad), Err(Error::Parse { .. })));
        let tower = r#"{"kind":"ncomplex","p":101,"N":2,"lo":0,"hi":2,"dims":[1,1,1],
            "diffs":[{"rows":1,"cols":1,"data":[1]},{"rows":1,"cols":1,"data":[1]}]}"#;
        assert_eq!(Fixture::parse(tower).unwrap().load(), Err(Error::AxiomViolation(0)));
    }
}
