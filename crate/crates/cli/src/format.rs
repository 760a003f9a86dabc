//! On-disk frame files: JSON with complex entries as `[re, im]` pairs.
//!
//! Numbers are written in the shortest decimal form that parses back to the
//! same double, so a write/read cycle is bit-exact.

use std::fs;
use std::path::Path;

use cstar_frames::linalg::{Complex64, ComplexMatrix};
use cstar_frames::{FrameSystem, ModuleOperator, ModuleShape, ModuleVector, ScalarProfile};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Absolute Frobenius tolerance for a certificate to match its vectors.
pub const CERTIFICATE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Algebra {
    pub d: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Module {
    pub n: usize,
}

/// A square `d×d` block, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<[f64; 2]>>", into = "Vec<Vec<[f64; 2]>>")]
pub struct Block(Vec<Vec<[f64; 2]>>);

impl TryFrom<Vec<Vec<[f64; 2]>>> for Block {
    type Error = String;

    fn try_from(rows: Vec<Vec<[f64; 2]>>) -> Result<Self, String> {
        if rows.is_empty() {
            return Err("empty block".into());
        }
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != rows.len()) {
            return Err(format!(
                "block is not square: row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                rows.len()
            ));
        }
        Ok(Block(rows))
    }
}

impl From<Block> for Vec<Vec<[f64; 2]>> {
    fn from(b: Block) -> Self {
        b.0
    }
}

impl Block {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    fn from_matrix(m: &ComplexMatrix) -> Self {
        Block(
            (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| [m[(i, j)].re, m[(i, j)].im])
                        .collect()
                })
                .collect(),
        )
    }

    fn to_matrix(&self) -> ComplexMatrix {
        let d = self.size();
        ComplexMatrix::from_fn(d, d, |i, j| {
            Complex64::new(self.0[i][j][0], self.0[i][j][1])
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// Direction `permutation[i]` carries `ξ + (l_{indices[i]} − profile.ξ)`.
    Profile,
    /// Direction `i` carries its multiplicity `θ_i` (1 when unlisted).
    Repetition,
}

/// `S = K + ξI` on the spanned directions, with `K` given in closed form.
///
/// Directions are 1-based. An `inverted` certificate describes `S⁻¹` of the
/// family it was derived from: every weight is replaced by its reciprocal
/// and `xi` is stored already inverted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub xi: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inverted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ScalarProfile>,
    pub permutation: Vec<usize>,
    /// Profile index of each permuted direction; `1, 2, …` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    /// `[direction, θ]` pairs of a repetition frame.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<[usize; 2]>>,
}

impl Certificate {
    /// Shift of the family the weights were declared for.
    fn source_xi(&self) -> f64 {
        if self.inverted {
            1.0 / self.xi
        } else {
            self.xi
        }
    }

    /// Diagonal of the claimed `S`, one weight per module direction.
    pub fn weights(&self, n: usize) -> Result<Vec<f64>, String> {
        let check_dir = |dir: usize| {
            if dir == 0 || dir > n {
                Err(format!("direction {dir} outside 1..={n}"))
            } else {
                Ok(dir - 1)
            }
        };
        let xi = self.source_xi();
        if !xi.is_finite() || xi == 0.0 {
            return Err(format!(
                "certificate shift must be finite and nonzero, got {}",
                self.xi
            ));
        }
        let mut w = vec![0.0; n];
        match self.kind {
            CertificateKind::Profile => {
                let p = self
                    .profile
                    .ok_or("profile certificate without a profile")?;
                ScalarProfile::new(p.kind(), p.xi(), p.amplitude()).map_err(|e| e.to_string())?;
                if let Some(idx) = &self.indices {
                    if idx.len() != self.permutation.len() {
                        return Err("indices and permutation differ in length".into());
                    }
                }
                for (pos, &dir) in self.permutation.iter().enumerate() {
                    let k = self.indices.as_ref().map_or(pos + 1, |idx| idx[pos]);
                    if k == 0 {
                        return Err("profile indices start at 1".into());
                    }
                    w[check_dir(dir)?] = xi + p.decay(k);
                }
            }
            CertificateKind::Repetition => {
                if xi != 1.0 {
                    return Err(format!("repetition certificates have shift 1, got {xi}"));
                }
                w.iter_mut().for_each(|x| *x = 1.0);
                let mults = self.multiplicities.as_deref().unwrap_or(&[]);
                for &[dir, theta] in mults {
                    if theta == 0 {
                        return Err(format!("direction {dir} has multiplicity 0"));
                    }
                    w[check_dir(dir)?] = theta as f64;
                }
                let mut listed: Vec<usize> =
                    mults.iter().filter(|m| m[1] > 1).map(|m| m[0]).collect();
                listed.sort_unstable();
                let mut perm = self.permutation.clone();
                perm.sort_unstable();
                if listed != perm {
                    return Err("permutation must list the repeated directions".into());
                }
            }
        }
        if self.inverted {
            for x in &mut w {
                if *x != 0.0 {
                    *x = 1.0 / *x;
                }
            }
        }
        Ok(w)
    }

    /// The claimed frame operator `K + ξ·P_span` as a module operator.
    pub fn claimed_operator(&self, shape: ModuleShape) -> Result<ModuleOperator, String> {
        let w = self.weights(shape.n)?;
        ModuleOperator::block_diagonal(shape, &w).map_err(|e| e.to_string())
    }

    /// `K = S_claimed − ξ·P_span`.
    pub fn k_operator(&self, shape: ModuleShape) -> Result<ModuleOperator, String> {
        let w: Vec<f64> = self
            .weights(shape.n)?
            .into_iter()
            .map(|x| if x == 0.0 { 0.0 } else { x - self.xi })
            .collect();
        ModuleOperator::block_diagonal(shape, &w).map_err(|e| e.to_string())
    }

    /// Every direction is spanned, so `S = K + ξI` on the whole module.
    pub fn spans_module(&self, n: usize) -> bool {
        self.weights(n)
            .map(|w| w.iter().all(|&x| x != 0.0))
            .unwrap_or(false)
    }

    /// The certificate of the canonical dual family.
    pub fn dual(&self) -> Self {
        Self {
            xi: 1.0 / self.xi,
            inverted: !self.inverted,
            ..self.clone()
        }
    }
}

mod erased {
    pub trait Json {
        fn json(&self) -> String;
    }

    impl<T: serde::Serialize> Json for T {
        fn json(&self) -> String {
            serde_json::to_string(self).expect("frame files serialize")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub schema: u32,
    pub algebra: Algebra,
    pub module: Module,
    pub vectors: Vec<Vec<Block>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl FrameFile {
    pub fn from_frame(frame: &FrameSystem, certificate: Option<Certificate>) -> Self {
        let shape = frame.shape();
        let vectors = frame
            .vectors()
            .iter()
            .map(|v| {
                (0..shape.n)
                    .map(|i| Block::from_matrix(&v.block(i)))
                    .collect()
            })
            .collect();
        Self {
            schema: SCHEMA_VERSION,
            algebra: Algebra { d: shape.d },
            module: Module { n: shape.n },
            vectors,
            certificate,
        }
    }

    pub fn shape(&self) -> Result<ModuleShape, String> {
        ModuleShape::new(self.algebra.d, self.module.n).map_err(|e| e.to_string())
    }

    /// Builds the frame, checking every block against the declared shape.
    pub fn to_frame(&self) -> CliResult<FrameSystem> {
        let shape = self.shape().map_err(CliError::Shape)?;
        let mut vectors = Vec::with_capacity(self.vectors.len());
        for (k, blocks) in self.vectors.iter().enumerate() {
            if blocks.len() != shape.n {
                return Err(CliError::Shape(format!(
                    "vector {} has {} blocks, module rank is {}",
                    k + 1,
                    blocks.len(),
                    shape.n
                )));
            }
            let mut rep = ComplexMatrix::zeros(shape.d, shape.rep_cols());
            for (i, b) in blocks.iter().enumerate() {
                if b.size() != shape.d {
                    return Err(CliError::Shape(format!(
                        "vector {} block {} is {}×{}, algebra has d = {}",
                        k + 1,
                        i + 1,
                        b.size(),
                        b.size(),
                        shape.d
                    )));
                }
                rep.set_block(0, i * shape.d, &b.to_matrix());
            }
            vectors.push(ModuleVector::new(shape, rep)?);
        }
        Ok(FrameSystem::new(shape, vectors)?)
    }

    /// Pretty-printed with one vector per line.
    pub fn to_json(&self) -> String {
        let compact = |v: &dyn erased::Json| v.json();
        let mut s = format!(
            "{{\n  \"schema\": {},\n  \"algebra\": {},\n  \"module\": {},\n  \"vectors\": [",
            self.schema,
            compact(&self.algebra),
            compact(&self.module)
        );
        for (k, v) in self.vectors.iter().enumerate() {
            s.push_str(if k == 0 { "\n    " } else { ",\n    " });
            s.push_str(&compact(v));
        }
        s.push_str("\n  ]");
        if let Some(c) = &self.certificate {
            s.push_str(",\n  \"certificate\": ");
            s.push_str(&compact(c));
        }
        s.push_str("\n}\n");
        s
    }

    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        let file: FrameFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if file.schema != SCHEMA_VERSION {
            return Err(CliError::Invalid {
                path: path.to_path_buf(),
                message: format!("unsupported schema version {}", file.schema),
            });
        }
        Ok(file)
    }

    /// Parses the file, builds the frame and validates any certificate.
    pub fn load(path: &Path) -> CliResult<(Self, FrameSystem)> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file = Self::parse(&text, path)?;
        let frame = file.to_frame()?;
        if let Some(cert) = &file.certificate {
            let invalid = |message: String| CliError::Invalid {
                path: path.to_path_buf(),
                message,
            };
            let claimed = cert
                .claimed_operator(frame.shape())
                .map_err(|m| invalid(format!("certificate: {m}")))?;
            let residual = frame.frame_operator().mat().distance(claimed.mat());
            if residual > CERTIFICATE_TOL {
                return Err(invalid(format!(
                    "certificate does not match the vectors: ‖S − claimed‖_F = {residual:e}"
                )));
            }
        }
        Ok((file, frame))
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        fs::write(path, self.to_json()).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}
