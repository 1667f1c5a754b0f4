//! Canonical JSON encodings.
//!
//! Rationals are written as `"p/q"` strings in lowest terms with `q > 0`; on
//! input bare integers (as strings or numbers) are accepted too. Each wire
//! type converts to its library counterpart with validation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebroid::{AlgebroidData, Element, SCAlgebra, SimplicialComplex};
use crate::error::{Error, Result};
use crate::poly::{BiDiffOp, Bivector, Monomial, Poly, PolyVector, TriDiffOp};
use crate::quadratic::QuadraticData;
use crate::rational::{format_rat, parse_rat, Rat};
use crate::rees::{FilteredPresentation, Rule};
use crate::star::{Obstruction, StarProduct};
use crate::trunc::{TMatrix, Trunc};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatJson {
    Text(String),
    Int(i64),
}

impl RatJson {
    pub fn parse(&self) -> Result<Rat> {
        match self {
            RatJson::Text(s) => parse_rat(s),
            RatJson::Int(n) => Ok(Rat::from_integer((*n).into())),
        }
    }
}

impl From<&Rat> for RatJson {
    fn from(r: &Rat) -> Self {
        RatJson::Text(format_rat(r))
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("wire types serialize");
    s.push('\n');
    s
}

pub fn default_vars(n: usize) -> Vec<String> {
    Poly::default_names(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: RatJson,
    pub exp: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn encode(p: &Poly, vars: &[String]) -> Self {
        PolyJson {
            vars: vars.to_vec(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    coef: c.into(),
                    exp: m.exps().to_vec(),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<Poly> {
        let n = self.vars.len();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.exp.len() != n {
                    return Err(Error::NvarsMismatch(t.exp.len(), n));
                }
                Ok((t.coef.parse()?, t.exp.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(n, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub poly: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivectorJson {
    pub vars: Vec<String>,
    pub entries: Vec<EntryJson>,
}

impl BivectorJson {
    pub fn encode(b: &Bivector, vars: &[String]) -> Self {
        BivectorJson {
            vars: vars.to_vec(),
            entries: b
                .entries()
                .filter(|(_, p)| !p.is_zero())
                .map(|(&(i, j), p)| EntryJson {
                    i,
                    j,
                    poly: PolyJson::encode(p, vars),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<Bivector> {
        let n = self.vars.len();
        let mut seen = BTreeSet::new();
        let mut entries = Vec::new();
        for e in &self.entries {
            if e.i >= e.j {
                return Err(Error::Parse(format!(
                    "bivector entry ({},{}) must have i < j",
                    e.i, e.j
                )));
            }
            if e.j >= n {
                return Err(Error::IndexOutOfRange { index: e.j, nvars: n });
            }
            if !seen.insert((e.i, e.j)) {
                return Err(Error::Parse(format!("duplicate bivector entry ({},{})", e.i, e.j)));
            }
            if e.poly.vars.len() != n {
                return Err(Error::NvarsMismatch(e.poly.vars.len(), n));
            }
            entries.push((e.i, e.j, e.poly.decode()?));
        }
        Bivector::from_entries(n, entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub coef: PolyJson,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpJson {
    pub k: usize,
    pub summands: Vec<SummandJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarProductJson {
    pub vars: Vec<String>,
    pub order: usize,
    /// `B_1 … B_N`; `B_0` is the pointwise product and is implicit.
    pub ops: Vec<OpJson>,
}

impl StarProductJson {
    pub fn encode(s: &StarProduct, vars: &[String]) -> Self {
        StarProductJson {
            vars: vars.to_vec(),
            order: s.order(),
            ops: s
                .ops()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, b)| OpJson {
                    k,
                    summands: b
                        .summands()
                        .map(|((a, bb), c)| SummandJson {
                            coef: PolyJson::encode(c, vars),
                            alpha: a.exps().to_vec(),
                            beta: bb.exps().to_vec(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<StarProduct> {
        let n = self.vars.len();
        let mut ops = vec![BiDiffOp::multiplication(n)];
        ops.extend((1..=self.order).map(|_| BiDiffOp::zero(n)));
        for op in &self.ops {
            if op.k == 0 || op.k > self.order {
                return Err(Error::Parse(format!(
                    "operator index {} outside 1..={}",
                    op.k, self.order
                )));
            }
            let summands = op
                .summands
                .iter()
                .map(|s| {
                    if s.alpha.len() != n || s.beta.len() != n {
                        return Err(Error::NvarsMismatch(s.alpha.len().max(s.beta.len()), n));
                    }
                    Ok((
                        s.coef.decode()?,
                        Monomial::new(s.alpha.clone()),
                        Monomial::new(s.beta.clone()),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            ops[op.k] = ops[op.k].add(&BiDiffOp::from_summands(n, summands)?);
        }
        StarProduct::from_ops(ops)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriSummandJson {
    pub coef: PolyJson,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub delta: Vec<u32>,
}

pub fn encode_tridiffop(t: &TriDiffOp, vars: &[String]) -> Vec<TriSummandJson> {
    t.summands()
        .map(|((a, b, d), c)| TriSummandJson {
            coef: PolyJson::encode(c, vars),
            alpha: a.exps().to_vec(),
            beta: b.exps().to_vec(),
            delta: d.exps().to_vec(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub idx: Vec<usize>,
    pub poly: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyVectorJson {
    pub vars: Vec<String>,
    pub degree: usize,
    pub components: Vec<ComponentJson>,
}

impl PolyVectorJson {
    pub fn encode(v: &PolyVector, vars: &[String]) -> Self {
        PolyVectorJson {
            vars: vars.to_vec(),
            degree: v.degree(),
            components: v
                .components()
                .filter(|(_, p)| !p.is_zero())
                .map(|(idx, p)| ComponentJson {
                    idx: idx.clone(),
                    poly: PolyJson::encode(p, vars),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<PolyVector> {
        let comps = self
            .components
            .iter()
            .map(|c| Ok((c.idx.clone(), c.poly.decode()?)))
            .collect::<Result<Vec<_>>>()?;
        PolyVector::from_components(self.vars.len(), self.degree, comps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionJson {
    pub order: usize,
    pub partial: StarProductJson,
    pub residual: Vec<TriSummandJson>,
    pub hkr: PolyVectorJson,
}

impl ObstructionJson {
    pub fn encode(o: &Obstruction, vars: &[String]) -> Self {
        ObstructionJson {
            order: o.order,
            partial: StarProductJson::encode(&o.partial, vars),
            residual: encode_tridiffop(&o.residual, vars),
            hkr: PolyVectorJson::encode(&o.hkr, vars),
        }
    }
}

/// A truncated ℏ-series as its coefficient vector `[c_0, …, c_N]`.
pub type TruncJson = Vec<RatJson>;

pub fn encode_trunc(t: &Trunc) -> TruncJson {
    t.coeffs().iter().map(RatJson::from).collect()
}

pub fn decode_trunc(t: &TruncJson, order: usize) -> Result<Trunc> {
    if t.len() > order + 1 {
        return Err(Error::Parse(format!(
            "series has {} coefficients, order is {order}",
            t.len()
        )));
    }
    let mut coeffs = t.iter().map(RatJson::parse).collect::<Result<Vec<_>>>()?;
    coeffs.resize(order + 1, Rat::from_integer(0.into()));
    Trunc::from_coeffs(coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TMatrixJson {
    pub order: usize,
    pub rows: Vec<Vec<TruncJson>>,
}

impl TMatrixJson {
    pub fn encode(m: &TMatrix) -> Self {
        TMatrixJson {
            order: m.order(),
            rows: (0..m.rows())
                .map(|i| m.row(i).iter().map(encode_trunc).collect())
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<TMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| decode_trunc(t, self.order))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TMatrix::from_rows(rows, self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticDataJson {
    pub dim: usize,
    pub order: usize,
    pub r2: TMatrixJson,
    pub r3: TMatrixJson,
}

impl QuadraticDataJson {
    pub fn encode(q: &QuadraticData) -> Self {
        QuadraticDataJson {
            dim: q.dim,
            order: q.order,
            r2: TMatrixJson::encode(&q.r2),
            r3: TMatrixJson::encode(&q.r3),
        }
    }

    pub fn decode(&self) -> Result<QuadraticData> {
        let q = QuadraticData {
            dim: self.dim,
            order: self.order,
            r2: self.r2.decode()?,
            r3: self.r3.decode()?,
        };
        let n = self.dim;
        if q.r2.cols() != n * n || q.r3.cols() != n * n * n || q.r2.order() != q.order || q.r3.order() != q.order {
            return Err(Error::InvalidData("relation matrices do not match dim/order".into()));
        }
        Ok(q)
    }
}

/// A complex given by its simplices; lower-dimensional faces of listed
/// simplices are added automatically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub faces: Vec<[usize; 3]>,
    #[serde(default)]
    pub tets: Vec<[usize; 4]>,
}

impl ComplexJson {
    pub fn encode(c: &SimplicialComplex) -> Self {
        ComplexJson {
            vertices: c.nvertices(),
            edges: c.edges().copied().collect(),
            faces: c.faces().copied().collect(),
            tets: c.tets().copied().collect(),
        }
    }

    pub fn decode(&self) -> Result<SimplicialComplex> {
        let mut faces: BTreeSet<[usize; 3]> = self.faces.iter().copied().collect();
        for t in &self.tets {
            faces.extend([
                [t[0], t[1], t[2]],
                [t[0], t[1], t[3]],
                [t[0], t[2], t[3]],
                [t[1], t[2], t[3]],
            ]);
        }
        let mut edges: BTreeSet<[usize; 2]> = self.edges.iter().copied().collect();
        for f in &faces {
            edges.extend([[f[0], f[1]], [f[0], f[2]], [f[1], f[2]]]);
        }
        let sort2 = |mut e: [usize; 2]| {
            e.sort_unstable();
            e
        };
        let sort3 = |mut f: [usize; 3]| {
            f.sort_unstable();
            f
        };
        let edges: BTreeSet<_> = edges.into_iter().map(sort2).collect();
        let faces: BTreeSet<_> = faces.into_iter().map(sort3).collect();
        SimplicialComplex::new(self.vertices, edges, faces, self.tets.iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraJson {
    /// `d × d` matrices over truncated series.
    Matrix { matrix: usize },
    Structure {
        rank: usize,
        /// `structure[a][b]` is the coordinate vector of `e_a·e_b`.
        structure: Vec<Vec<Vec<TruncJson>>>,
        unit: Vec<TruncJson>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeMapJson {
    pub from: usize,
    pub to: usize,
    pub matrix: Vec<Vec<TruncJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceUnitJson {
    pub face: [usize; 3],
    pub element: Vec<TruncJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebroidJson {
    pub order: usize,
    pub complex: ComplexJson,
    /// One entry per vertex, or a single entry shared by all vertices.
    pub algebras: Vec<AlgebraJson>,
    pub edge_maps: Vec<EdgeMapJson>,
    pub face_units: Vec<FaceUnitJson>,
}

fn decode_element(e: &[TruncJson], order: usize) -> Result<Element> {
    e.iter().map(|t| decode_trunc(t, order)).collect()
}

fn encode_element(e: &Element) -> Vec<TruncJson> {
    e.iter().map(encode_trunc).collect()
}

impl AlgebraJson {
    pub fn decode(&self, order: usize) -> Result<SCAlgebra> {
        match self {
            AlgebraJson::Matrix { matrix } => {
                if *matrix == 0 {
                    return Err(Error::InvalidData("matrix algebra of size 0".into()));
                }
                Ok(SCAlgebra::matrix_algebra(*matrix, order))
            }
            AlgebraJson::Structure { rank, structure, unit } => {
                if structure.len() != *rank {
                    return Err(Error::InvalidData("structure tensor does not match rank".into()));
                }
                let s = structure
                    .iter()
                    .map(|row| row.iter().map(|v| decode_element(v, order)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                SCAlgebra::new(s, decode_element(unit, order)?)
            }
        }
    }

    pub fn encode(a: &SCAlgebra) -> Self {
        AlgebraJson::Structure {
            rank: a.rank(),
            structure: a
                .structure()
                .iter()
                .map(|row| row.iter().map(encode_element).collect())
                .collect(),
            unit: encode_element(a.unit()),
        }
    }
}

impl AlgebroidJson {
    /// Writes every edge direction and every face orientation.
    pub fn encode(d: &AlgebroidData) -> Self {
        let mut algebras: Vec<AlgebraJson> = d.algebras().iter().map(AlgebraJson::encode).collect();
        if d.algebras().windows(2).all(|w| w[0] == w[1]) {
            algebras.truncate(1);
        }
        AlgebroidJson {
            order: d.order(),
            complex: ComplexJson::encode(d.complex()),
            algebras,
            edge_maps: d
                .edge_maps()
                .iter()
                .map(|(&(from, to), m)| EdgeMapJson {
                    from,
                    to,
                    matrix: TMatrixJson::encode(m).rows,
                })
                .collect(),
            face_units: d
                .face_units()
                .iter()
                .map(|(&(i, j, k), e)| FaceUnitJson {
                    face: [i, j, k],
                    element: encode_element(e),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<AlgebroidData> {
        let complex = self.complex.decode()?;
        let n = complex.nvertices();
        let algebras = match self.algebras.len() {
            1 => vec![self.algebras[0].decode(self.order)?; n],
            len if len == n => self
                .algebras
                .iter()
                .map(|a| a.decode(self.order))
                .collect::<Result<Vec<_>>>()?,
            len => return Err(Error::InvalidData(format!("{len} algebras for {n} vertices"))),
        };
        let mut edge_maps = BTreeMap::new();
        for e in &self.edge_maps {
            let m = TMatrixJson {
                order: self.order,
                rows: e.matrix.clone(),
            }
            .decode()?;
            if edge_maps.insert((e.from, e.to), m).is_some() {
                return Err(Error::Parse(format!("duplicate edge map {}-{}", e.from, e.to)));
            }
        }
        let mut face_units = BTreeMap::new();
        for f in &self.face_units {
            let [i, j, k] = f.face;
            if face_units
                .insert((i, j, k), decode_element(&f.element, self.order)?)
                .is_some()
            {
                return Err(Error::Parse(format!("duplicate face unit {:?}", f.face)));
            }
        }
        AlgebroidData::new(complex, algebras, edge_maps, face_units)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhsTermJson {
    pub coef: RatJson,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub lhs: Vec<String>,
    pub rhs: Vec<RhsTermJson>,
}

/// Words are lists of generator names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub weights: Vec<u32>,
    #[serde(default)]
    pub commutative: bool,
    #[serde(default)]
    pub central: Option<String>,
    pub rules: Vec<RuleJson>,
    pub bound: u32,
}

impl PresentationJson {
    pub fn encode(p: &FilteredPresentation) -> Self {
        let name = |w: &[usize]| w.iter().map(|&a| p.generators[a].clone()).collect();
        PresentationJson {
            generators: p.generators.clone(),
            weights: p.weights.clone(),
            commutative: p.commutative,
            central: p.central.map(|c| p.generators[c].clone()),
            rules: p
                .rules
                .iter()
                .map(|r| RuleJson {
                    lhs: name(&r.lhs),
                    rhs: r
                        .rhs
                        .iter()
                        .map(|(c, w)| RhsTermJson {
                            coef: c.into(),
                            word: name(w),
                        })
                        .collect(),
                })
                .collect(),
            bound: p.bound,
        }
    }

    pub fn decode(&self) -> Result<FilteredPresentation> {
        let index: BTreeMap<&str, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        if index.len() != self.generators.len() {
            return Err(Error::Parse("duplicate generator name".into()));
        }
        if self.weights.len() != self.generators.len() {
            return Err(Error::Parse("one weight per generator is required".into()));
        }
        let word = |w: &[String]| -> Result<Vec<usize>> {
            w.iter()
                .map(|g| {
                    index
                        .get(g.as_str())
                        .copied()
                        .ok_or_else(|| Error::Parse(format!("unknown generator {g:?}")))
                })
                .collect()
        };
        let rules = self
            .rules
            .iter()
            .map(|r| {
                Ok(Rule {
                    lhs: word(&r.lhs)?,
                    rhs: r
                        .rhs
                        .iter()
                        .map(|t| Ok((t.coef.parse()?, word(&t.word)?)))
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let central = match &self.central {
            Some(c) => Some(word(std::slice::from_ref(c))?[0]),
            None => None,
        };
        let p = FilteredPresentation {
            generators: self.generators.clone(),
            weights: self.weights.clone(),
            commutative: self.commutative,
            central,
            rules,
            bound: self.bound,
        };
        p.validate()?;
        Ok(p)
    }
}
