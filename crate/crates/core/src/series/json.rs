use super::qseries::{Exponent, QSeries};
use crate::error::{Error, Result};
use rug::Rational;
use serde::{Deserialize, Serialize};

/// Serialized form `{lead_exp: "p/q", coeffs: ["n/d", ...], order: N}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesJson {
    pub lead_exp: String,
    pub coeffs: Vec<String>,
    pub order: usize,
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("'{s}': {e}")))
}

impl From<&QSeries<Rational>> for QSeriesJson {
    fn from(s: &QSeries<Rational>) -> Self {
        QSeriesJson {
            lead_exp: s.lead_exp().to_string(),
            coeffs: s.coeffs().iter().map(|c| c.to_string()).collect(),
            order: s.order(),
        }
    }
}

impl TryFrom<&QSeriesJson> for QSeries<Rational> {
    type Error = Error;
    fn try_from(j: &QSeriesJson) -> Result<Self> {
        let lead = Exponent::from_rational(&parse_rational(&j.lead_exp)?)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != j.order + 1 {
            return Err(Error::Parse(format!(
                "order {} but {} coefficients",
                j.order,
                coeffs.len()
            )));
        }
        QSeries::new(lead, coeffs)
    }
}

impl QSeries<Rational> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&QSeriesJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: QSeriesJson = serde_json::from_str(s)?;
        QSeries::try_from(&j)
    }
}
