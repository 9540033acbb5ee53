//! Front end for the `uuniv` codecs: text encode/decode, verification suites,
//! seeded fuzzing, and JSON certificate records.

pub mod codec;
pub mod fuzz;
pub mod suites;

use std::time::Instant;

use serde::Serialize;

pub use codec::{run_decode, run_encode, Codec};
pub use fuzz::{run_fuzz, FUZZ_CODECS};
pub use suites::{run_verify, suite_ids, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    DepthInsufficient,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::DepthInsufficient => "DEPTH-INSUFFICIENT",
        }
    }
}

/// What a check found, before timing is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub instance: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

impl Finding {
    pub fn pass(instance: impl Into<String>) -> Self {
        Finding {
            instance: instance.into(),
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    /// A pass that carries a certificate, e.g. an isolating neighbourhood.
    pub fn certified(instance: impl Into<String>, certificate: impl Into<String>) -> Self {
        Finding {
            witness: Some(certificate.into()),
            ..Finding::pass(instance)
        }
    }

    pub fn fail(instance: impl Into<String>, witness: impl Into<String>) -> Self {
        Finding {
            instance: instance.into(),
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn insufficient(instance: impl Into<String>, witness: impl Into<String>) -> Self {
        Finding {
            instance: instance.into(),
            verdict: Verdict::DepthInsufficient,
            witness: Some(witness.into()),
        }
    }
}

/// One verified claim. Fields serialize in declaration order; a non-pass
/// verdict always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub claim: String,
    pub instance: String,
    pub depth: u64,
    pub verdict: Verdict,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CertificateRecord {
    pub fn new(claim: impl Into<String>, depth: u64, finding: Finding, elapsed_ms: Option<u64>) -> Self {
        debug_assert!(finding.verdict == Verdict::Pass || finding.witness.is_some());
        CertificateRecord {
            claim: claim.into(),
            instance: finding.instance,
            depth,
            verdict: finding.verdict,
            witness: finding.witness,
            elapsed_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let mut s = format!("{:<5} {} (depth {}): {}", self.verdict.label(), self.claim, self.depth, self.instance);
        if let Some(w) = &self.witness {
            s.push_str(&format!("; {w}"));
        }
        if let Some(ms) = self.elapsed_ms {
            s.push_str(&format!(" [{ms} ms]"));
        }
        s
    }
}

/// Run a check and attach its wall time in milliseconds.
pub(crate) fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis() as u64)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] uuniv::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Render records as a pretty JSON array followed by a newline.
pub fn records_json(records: &[CertificateRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

pub(crate) mod sample {
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;
    use uuniv::stream::Periodic;

    /// `n` with probability `2^-(n+1)`.
    pub fn geometric(rng: &mut ChaCha8Rng) -> u64 {
        let mut n = 0;
        while rng.gen_bool(0.5) {
            n += 1;
        }
        n
    }

    /// A bit word of length `min` plus a geometric number.
    pub fn word(rng: &mut ChaCha8Rng, min: u64) -> Vec<u8> {
        let len = min + geometric(rng);
        (0..len).map(|_| rng.gen_range(0..2)).collect()
    }

    pub fn periodic_bits(rng: &mut ChaCha8Rng) -> Periodic<u8> {
        let pre = word(rng, 0);
        let per = word(rng, 1);
        Periodic::new(pre, per).expect("nonempty period")
    }

    pub fn periodic_nats(rng: &mut ChaCha8Rng) -> Periodic<u64> {
        let pre: Vec<u64> = (0..geometric(rng)).map(|_| geometric(rng)).collect();
        let per: Vec<u64> = (0..geometric(rng) + 1).map(|_| geometric(rng)).collect();
        Periodic::new(pre, per).expect("nonempty period")
    }
}
