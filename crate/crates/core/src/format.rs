//! The `geonet/1` JSON network format.
//!
//! ```json
//! {
//!   "version": "geonet/1",
//!   "vertices": [{"angle": 0.0, "tan_half": [0, 1], "m": 2},
//!                {"angle": 3.141592653589793, "tan_half": "inf", "m": 2}],
//!   "edges": [{"i": 0, "j": 1, "m": 2}]
//! }
//! ```
//!
//! `tan_half` is `[p, q]` for the exact point with `tan(θ/2) = p/q`, `"inf"`
//! for `θ = π`, and `null` (or absent) for a float-only position. Exact data
//! wins over `angle`, which must agree with it to [`ANGLE_CONSISTENCY_TOL`].

use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};
use thiserror::Error;

use crate::exact::{normalize_angle, TanHalf, Q};
use crate::network::{make_network, CirclePoint, InteriorEdge, Network, NetworkError, Vertex};

pub const FORMAT_VERSION: &str = "geonet/1";

/// Allowed gap between `angle` and the angle of the exact point.
pub const ANGLE_CONSISTENCY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format version {0:?} (expected \"{FORMAT_VERSION}\")")]
    Version(String),
    #[error("vertex {vertex}: {message}")]
    Vertex { vertex: usize, message: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message.
        let message = match message.rfind(" at line ") {
            Some(k) => message[..k].to_string(),
            None => message,
        };
        FormatError::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNetwork {
    version: String,
    vertices: Vec<RawVertex>,
    edges: Vec<RawEdge>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    angle: f64,
    #[serde(default)]
    tan_half: Option<RawTanHalf>,
    m: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawTanHalf {
    Ratio([Number; 2]),
    Marker(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    i: usize,
    j: usize,
    m: u64,
}

fn big_of(n: &Number, vertex: usize) -> Result<BigInt, FormatError> {
    BigInt::from_str(&n.to_string()).map_err(|_| FormatError::Vertex {
        vertex,
        message: format!("tan_half entry {n} is not an integer"),
    })
}

fn number_of(b: &BigInt) -> Number {
    Number::from_str(&b.to_string()).expect("decimal integers are JSON numbers")
}

fn position(raw: &RawVertex, vertex: usize) -> Result<CirclePoint, FormatError> {
    let bad = |message: String| FormatError::Vertex { vertex, message };
    if !raw.angle.is_finite() {
        return Err(bad(format!("angle {} is not finite", raw.angle)));
    }
    let t = match &raw.tan_half {
        None => return Ok(CirclePoint::from_angle(raw.angle)),
        Some(RawTanHalf::Marker(s)) if s == "inf" => TanHalf::Infinity,
        Some(RawTanHalf::Marker(s)) => return Err(bad(format!("unknown tan_half marker {s:?}"))),
        Some(RawTanHalf::Ratio([p, q])) => {
            let (p, q) = (big_of(p, vertex)?, big_of(q, vertex)?);
            if q.is_zero() {
                return Err(bad("tan_half denominator is zero".into()));
            }
            TanHalf::Finite(Q::new(p, q))
        }
    };
    let point = CirclePoint::from_tan_half(&t);
    let gap = normalize_angle(raw.angle - point.angle());
    if gap.min(std::f64::consts::TAU - gap) > ANGLE_CONSISTENCY_TOL {
        return Err(bad(format!(
            "angle {} disagrees with tan_half {t}",
            raw.angle
        )));
    }
    Ok(point)
}

/// Parses a network; vertices are re-sorted by angle as in [`make_network`].
pub fn network_from_str(text: &str) -> Result<Network, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    if let Some(v) = value.get("version").and_then(Value::as_str) {
        if v != FORMAT_VERSION {
            return Err(FormatError::Version(v.to_string()));
        }
    }
    let raw: RawNetwork = serde_json::from_str(text)?;
    let vertices = raw
        .vertices
        .iter()
        .enumerate()
        .map(|(k, v)| Ok(Vertex::new(position(v, k)?, v.m)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    let edges = raw
        .edges
        .iter()
        .map(|e| InteriorEdge::new(e.i, e.j, e.m))
        .collect();
    Ok(make_network(vertices, edges)?)
}

fn raw_of(net: &Network) -> RawNetwork {
    let vertices = net
        .vertices()
        .iter()
        .map(|v| RawVertex {
            angle: v.position.angle(),
            tan_half: v.position.exact_point().map(|p| match p.tan_half() {
                TanHalf::Infinity => RawTanHalf::Marker("inf".into()),
                TanHalf::Finite(t) => {
                    RawTanHalf::Ratio([number_of(t.numer()), number_of(t.denom())])
                }
            }),
            m: v.exterior_mult,
        })
        .collect();
    let edges = net
        .edges()
        .iter()
        .map(|e| RawEdge {
            i: e.i,
            j: e.j,
            m: e.mult,
        })
        .collect();
    RawNetwork {
        version: FORMAT_VERSION.into(),
        vertices,
        edges,
    }
}

/// The network as a JSON value.
pub fn network_to_value(net: &Network) -> Value {
    serde_json::to_value(raw_of(net)).expect("network JSON is always serializable")
}

/// Pretty-printed JSON, newline-terminated.
pub fn network_to_string(net: &Network) -> String {
    let mut s =
        serde_json::to_string_pretty(&raw_of(net)).expect("network JSON is always serializable");
    s.push('\n');
    s
}

pub fn read_network(path: impl AsRef<Path>) -> Result<Network, FormatError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    network_from_str(&text)
}

pub fn write_network(net: &Network, path: impl AsRef<Path>) -> Result<(), FormatError> {
    let path = path.as_ref();
    fs::write(path, network_to_string(net)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = r#"{"version":"geonet/1",
 "vertices":[{"angle":0.0,"tan_half":[0,1],"m":3},{"angle":3.141592653589793,"tan_half":"inf","m":3}],
 "edges":[{"i":0,"j":1,"m":3}]}"#;

    #[test]
    fn reads_line() {
        assert_eq!(network_from_str(LINE).unwrap(), Network::line(3));
    }

    #[test]
    fn round_trip_keeps_exact_data() {
        let net = Network::line(2);
        assert_eq!(network_from_str(&network_to_string(&net)).unwrap(), net);
    }

    #[test]
    fn huge_integers_stay_exact() {
        let big = "123456789012345678901234567890";
        let text = format!(
            r#"{{"version":"geonet/1","vertices":[{{"angle":3.1415926535897913,"tan_half":[{big},1],"m":1}}],"edges":[]}}"#
        );
        let net = network_from_str(&text).unwrap();
        assert!(network_to_string(&net).contains(big));
    }

    #[test]
    fn unknown_version() {
        let text = LINE.replace("geonet/1", "geonet/999");
        assert!(
            matches!(network_from_str(&text), Err(FormatError::Version(v)) if v == "geonet/999")
        );
    }

    #[test]
    fn missing_edges_has_position() {
        let text = r#"{"version":"geonet/1",
"vertices":[]}"#;
        match network_from_str(text) {
            Err(FormatError::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("edges"), "{message}");
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_position() {
        let Err(FormatError::Parse { line, column, .. }) = network_from_str("{\n  \"version\": }")
        else {
            panic!("expected a parse error");
        };
        assert_eq!((line, column), (2, 14));
    }

    #[test]
    fn inconsistent_angle() {
        let text = LINE.replace("\"angle\":0.0", "\"angle\":0.5");
        assert!(matches!(
            network_from_str(&text),
            Err(FormatError::Vertex { vertex: 0, .. })
        ));
    }

    #[test]
    fn zero_denominator_and_bad_marker() {
        let text = LINE.replace("[0,1]", "[0,0]");
        assert!(matches!(
            network_from_str(&text),
            Err(FormatError::Vertex { vertex: 0, .. })
        ));
        let text = LINE.replace("\"inf\"", "\"infinity\"");
        assert!(matches!(
            network_from_str(&text),
            Err(FormatError::Vertex { vertex: 1, .. })
        ));
    }
}
