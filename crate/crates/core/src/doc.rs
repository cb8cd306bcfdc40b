//! JSON documents for every serialisable object, and the versioned
//! envelope used for files.
//!
//! Polynomials are written as `{"arity":k,"terms":[[[e_1,...,e_k],c],...]}`
//! with terms in dense-index order. Emitting is canonical: parsing a
//! canonical document and emitting it again reproduces the same bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fastforward::{ElementaryFactor, FastForwardForm, SeedInfo};
use crate::ffring::{PrimeModulus, ReducedPoly};
use crate::intpoly::{BinomialPoly, QPolynomial};
use crate::oracle::PermutationTable;
use crate::trigroup::{ConjugationCertificate, DiagonalMap, TriangularPermutation};
use crate::zflow::FlowMap;

/// Envelope version understood by this build.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct PolyDoc {
    arity: usize,
    terms: Vec<(Vec<u32>, u32)>,
}

impl PolyDoc {
    fn of(f: &ReducedPoly) -> Self {
        PolyDoc {
            arity: f.arity(),
            terms: f.terms().collect(),
        }
    }

    fn build(self, p: PrimeModulus) -> Result<ReducedPoly> {
        if let Some((_, c)) = self.terms.iter().find(|(_, c)| *c >= p.get()) {
            return Err(Error::usage(format!(
                "coefficient {c} is not reduced mod {p}"
            )));
        }
        ReducedPoly::from_terms(p, self.arity, self.terms)
    }
}

#[derive(Serialize, Deserialize)]
struct TriDoc {
    p: u32,
    n: usize,
    components: Vec<PolyDoc>,
}

impl TriDoc {
    fn of(s: &TriangularPermutation) -> Self {
        TriDoc {
            p: s.modulus().get(),
            n: s.n(),
            components: s.components().iter().map(PolyDoc::of).collect(),
        }
    }

    fn build(self) -> Result<TriangularPermutation> {
        let p = PrimeModulus::new(self.p as u64)?;
        if self.components.len() != self.n {
            return Err(Error::usage(format!(
                "n = {} but {} components given",
                self.n,
                self.components.len()
            )));
        }
        let comps = self
            .components
            .into_iter()
            .map(|c| c.build(p))
            .collect::<Result<_>>()?;
        TriangularPermutation::new(p, comps)
    }
}

#[derive(Serialize, Deserialize)]
struct FactorDoc {
    i: usize,
    sign: i8,
    g: PolyDoc,
}

impl FactorDoc {
    fn of(f: &ElementaryFactor) -> Self {
        FactorDoc {
            i: f.target(),
            sign: f.sign(),
            g: PolyDoc {
                arity: f.arity(),
                terms: f.terms().to_vec(),
            },
        }
    }

    fn build(self, p: PrimeModulus) -> Result<ElementaryFactor> {
        let terms = self.g.terms.into_iter().map(|(e, c)| (e, c as u64));
        ElementaryFactor::new(p, self.i, self.sign, self.g.arity, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct SeedDoc {
    algorithm: String,
    seed: u64,
    budget: usize,
}

#[derive(Serialize, Deserialize)]
struct FormDoc {
    p: u32,
    n: usize,
    factors: Vec<FactorDoc>,
    diag: Vec<u32>,
    wrap: Vec<FactorDoc>,
    seed_info: Option<SeedDoc>,
}

impl FormDoc {
    fn of(f: &FastForwardForm) -> Self {
        FormDoc {
            p: f.modulus().get(),
            n: f.n(),
            factors: f.factors().iter().map(FactorDoc::of).collect(),
            diag: f.diag().lambdas().to_vec(),
            wrap: f.wrap().iter().map(FactorDoc::of).collect(),
            seed_info: f.seed_info().map(|s| SeedDoc {
                algorithm: s.algorithm.clone(),
                seed: s.seed,
                budget: s.budget,
            }),
        }
    }

    fn build(self) -> Result<FastForwardForm> {
        let p = PrimeModulus::new(self.p as u64)?;
        let factors = self
            .factors
            .into_iter()
            .map(|f| f.build(p))
            .collect::<Result<_>>()?;
        let wrap = self
            .wrap
            .into_iter()
            .map(|f| f.build(p))
            .collect::<Result<_>>()?;
        let diag = DiagonalMap::new(p, self.diag)?;
        let info = self.seed_info.map(|s| SeedInfo {
            algorithm: s.algorithm,
            seed: s.seed,
            budget: s.budget,
        });
        FastForwardForm::new(p, self.n, factors, diag, wrap, info)
    }
}

#[derive(Serialize, Deserialize)]
struct FlowDoc {
    p: u32,
    n: usize,
    q_arity: usize,
    components: Vec<PolyDoc>,
}

impl FlowDoc {
    fn of(f: &FlowMap) -> Self {
        FlowDoc {
            p: f.modulus().get(),
            n: f.n(),
            q_arity: f.q_arity(),
            components: f.components().iter().map(PolyDoc::of).collect(),
        }
    }

    fn build(self) -> Result<FlowMap> {
        let p = PrimeModulus::new(self.p as u64)?;
        if self.q_arity != self.n {
            return Err(Error::usage("q_arity must equal n"));
        }
        let comps = self
            .components
            .into_iter()
            .map(|c| c.build(p))
            .collect::<Result<_>>()?;
        FlowMap::new(p, self.n, comps)
    }
}

#[derive(Serialize, Deserialize)]
struct CertDoc {
    source: TriDoc,
    phi: TriDoc,
    diag: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Body {
    Triangular(TriDoc),
    Fastforward(FormDoc),
    Flow(FlowDoc),
    Certificate(CertDoc),
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: u32,
    #[serde(flatten)]
    body: Body,
}

/// Any object that can be stored in a map file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapDocument {
    Triangular(TriangularPermutation),
    FastForward(FastForwardForm),
    Flow(FlowMap),
    /// A certificate together with the map it conjugates onto `Δ`.
    Certificate {
        source: TriangularPermutation,
        certificate: ConjugationCertificate,
    },
}

impl MapDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            MapDocument::Triangular(_) => "triangular",
            MapDocument::FastForward(_) => "fastforward",
            MapDocument::Flow(_) => "flow",
            MapDocument::Certificate { .. } => "certificate",
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::usage(format!("malformed document: {e}"))
}

/// One line of compact JSON, newline terminated.
pub fn emit_map(doc: &MapDocument) -> String {
    let body = match doc {
        MapDocument::Triangular(s) => Body::Triangular(TriDoc::of(s)),
        MapDocument::FastForward(f) => Body::Fastforward(FormDoc::of(f)),
        MapDocument::Flow(f) => Body::Flow(FlowDoc::of(f)),
        MapDocument::Certificate {
            source,
            certificate,
        } => Body::Certificate(CertDoc {
            source: TriDoc::of(source),
            phi: TriDoc::of(certificate.phi()),
            diag: certificate.diag().lambdas().to_vec(),
        }),
    };
    let env = Envelope {
        version: FORMAT_VERSION,
        body,
    };
    let mut out = serde_json::to_string(&env).expect("documents always serialise");
    out.push('\n');
    out
}

pub fn parse_map(text: &str) -> Result<MapDocument> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    match value.get("version").and_then(|v| v.as_u64()) {
        Some(v) if v == FORMAT_VERSION as u64 => {}
        Some(v) => return Err(Error::usage(format!("unsupported document version {v}"))),
        None => return Err(Error::usage("document has no version field")),
    }
    let env: Envelope = serde_json::from_str(text).map_err(json_error)?;
    Ok(match env.body {
        Body::Triangular(t) => MapDocument::Triangular(t.build()?),
        Body::Fastforward(f) => MapDocument::FastForward(f.build()?),
        Body::Flow(f) => MapDocument::Flow(f.build()?),
        Body::Certificate(c) => {
            let source = c.source.build()?;
            let phi = c.phi.build()?;
            let diag = DiagonalMap::new(source.modulus(), c.diag)?;
            let certificate = ConjugationCertificate::new(&source, phi, diag)?;
            MapDocument::Certificate {
                source,
                certificate,
            }
        }
    })
}

/// `{"arity":k,"terms":[...]}`.
pub fn poly_to_json(f: &ReducedPoly) -> String {
    serde_json::to_string(&PolyDoc::of(f)).expect("serialisable")
}

pub fn poly_from_json(p: PrimeModulus, text: &str) -> Result<ReducedPoly> {
    serde_json::from_str::<PolyDoc>(text)
        .map_err(json_error)?
        .build(p)
}

#[derive(Serialize, Deserialize)]
struct QDoc {
    p: u32,
    vars: String,
    arity: usize,
    terms: Vec<(Vec<u32>, u32)>,
}

/// The polynomial format tagged with `"vars":"Q"`.
pub fn qpoly_to_json(g: &QPolynomial) -> String {
    let doc = PolyDoc::of(g.poly());
    serde_json::to_string(&QDoc {
        p: g.poly().modulus().get(),
        vars: "Q".into(),
        arity: doc.arity,
        terms: doc.terms,
    })
    .expect("serialisable")
}

pub fn qpoly_from_json(text: &str) -> Result<QPolynomial> {
    let d: QDoc = serde_json::from_str(text).map_err(json_error)?;
    if d.vars != "Q" {
        return Err(Error::usage(format!(
            "expected vars \"Q\", found {:?}",
            d.vars
        )));
    }
    let p = PrimeModulus::new(d.p as u64)?;
    let poly = PolyDoc {
        arity: d.arity,
        terms: d.terms,
    }
    .build(p)?;
    Ok(QPolynomial::new(poly))
}

#[derive(Serialize, Deserialize)]
struct BinomDoc {
    coeffs: Vec<(usize, String)>,
}

/// `{"coeffs":[[i,"num/den"],...]}`, indices ascending.
pub fn binomial_to_json(f: &BinomialPoly) -> String {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|(i, c)| (*i, format!("{}/{}", c.numer(), c.denom())))
        .collect();
    serde_json::to_string(&BinomDoc { coeffs }).expect("serialisable")
}

pub fn binomial_from_json(text: &str) -> Result<BinomialPoly> {
    let d: BinomDoc = serde_json::from_str(text).map_err(json_error)?;
    let coeffs = d
        .coeffs
        .into_iter()
        .map(|(i, s)| {
            let (num, den) = s.split_once('/').unwrap_or((&s, "1"));
            let parse = |t: &str| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::usage(format!("bad rational {s:?}")))
            };
            let den = parse(den)?;
            if den == BigInt::from(0) {
                return Err(Error::usage(format!("zero denominator in {s:?}")));
            }
            Ok((i, BigRational::new(parse(num)?, den)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BinomialPoly::new(coeffs))
}

/// The table as a JSON integer array.
pub fn table_to_json(t: &PermutationTable) -> String {
    serde_json::to_string(&t.table).expect("serialisable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fastforward::sparse_generate;
    use crate::trigroup::conjugate_to_delta;
    use crate::zflow::build_flow;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn delta_roundtrip_is_byte_exact() {
        let d = TriangularPermutation::delta_map(pm(2), 2).unwrap();
        let text = emit_map(&MapDocument::Triangular(d.clone()));
        assert_eq!(
            text,
            "{\"version\":1,\"kind\":\"triangular\",\"p\":2,\"n\":2,\"components\":\
             [{\"arity\":0,\"terms\":[[[],1]]},{\"arity\":1,\"terms\":[[[1],1]]}]}\n"
        );
        let back = parse_map(&text).unwrap();
        assert_eq!(back, MapDocument::Triangular(d));
        assert_eq!(emit_map(&back), text);
    }

    #[test]
    fn every_kind_roundtrips() {
        let p = pm(3);
        let form = sparse_generate(p, 3, 3, 42, true).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        let sigma = TriangularPermutation::random_maximal(p, 2, &mut rng).unwrap();
        let cert = conjugate_to_delta(&sigma).unwrap();
        let docs = [
            MapDocument::FastForward(form),
            MapDocument::Flow(build_flow(&sigma).unwrap()),
            MapDocument::Certificate {
                source: sigma.clone(),
                certificate: cert,
            },
            MapDocument::Triangular(sigma),
        ];
        for d in docs {
            let text = emit_map(&d);
            let back = parse_map(&text).unwrap();
            assert_eq!(back, d, "{}", d.kind());
            assert_eq!(emit_map(&back), text);
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let bad_exp = r#"{"version":1,"kind":"triangular","p":2,"n":2,"components":[{"arity":0,"terms":[]},{"arity":1,"terms":[[[2],1]]}]}"#;
        let err = parse_map(bad_exp).unwrap_err();
        assert!(err.to_string().contains("x^p = x"), "{err}");
        let bad_version = r#"{"version":2,"kind":"triangular","p":2,"n":1,"components":[{"arity":0,"terms":[]}]}"#;
        assert!(parse_map(bad_version)
            .unwrap_err()
            .to_string()
            .contains("version 2"));
        let err = parse_map("{\"version\":1,\n \"kind\": }").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_map(r#"{"version":1,"kind":"nope"}"#).is_err());
    }

    #[test]
    fn small_formats() {
        let f = BinomialPoly::new([
            (2, BigRational::new(1.into(), 2.into())),
            (0, BigRational::from_integer((-3).into())),
        ]);
        let text = binomial_to_json(&f);
        assert_eq!(text, r#"{"coeffs":[[0,"-3/1"],[2,"1/2"]]}"#);
        assert_eq!(binomial_from_json(&text).unwrap(), f);

        let g = QPolynomial::new(ReducedPoly::variable(pm(2), 2, 1));
        let text = qpoly_to_json(&g);
        assert_eq!(text, r#"{"p":2,"vars":"Q","arity":2,"terms":[[[0,1],1]]}"#);
        assert_eq!(qpoly_from_json(&text).unwrap(), g);

        let x = ReducedPoly::variable(pm(5), 2, 0);
        assert_eq!(poly_from_json(pm(5), &poly_to_json(&x)).unwrap(), x);
    }
}
