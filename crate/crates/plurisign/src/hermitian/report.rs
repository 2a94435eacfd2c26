//! Serializable classification reports.

use serde::{Deserialize, Serialize};

/// Four-valued truth: definite answers, parameter-dependent answers, and an
/// honest refusal to decide.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Conditional,
    Unknown,
}

impl Truth {
    pub fn label(self) -> &'static str {
        match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Conditional => "conditional",
            Truth::Unknown => "unknown",
        }
    }

    /// Conjunction: a single false conjunct settles the matter, an unknown
    /// one blocks any positive conclusion.
    pub fn and(self, other: Truth) -> Truth {
        use Truth::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (Unknown, _) | (_, Unknown) => Unknown,
            (Conditional, _) | (_, Conditional) => Conditional,
            (True, True) => True,
        }
    }
}

/// One classified property: the verdict, a textual account of how it was
/// reached, and the parameter assignment or direction exhibiting it, when
/// one exists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropertyReport {
    pub verdict: Truth,
    pub certificate: String,
    pub witness: Option<String>,
}

impl PropertyReport {
    pub fn new(verdict: Truth, certificate: impl Into<String>) -> Self {
        PropertyReport { verdict, certificate: certificate.into(), witness: None }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

/// Verdicts for every metric predicate the engine decides.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub kahler: PropertyReport,
    pub pluriclosed: PropertyReport,
    pub pluripositive: PropertyReport,
    pub plurinegative: PropertyReport,
    pub balanced: PropertyReport,
    pub gauduchon: PropertyReport,
    pub guan_li: PropertyReport,
    pub plurineg_n: PropertyReport,
    pub higher_dim: PropertyReport,
}

impl ClassificationReport {
    pub fn properties(&self) -> [(&'static str, &PropertyReport); 9] {
        [
            ("kahler", &self.kahler),
            ("pluriclosed", &self.pluriclosed),
            ("pluripositive", &self.pluripositive),
            ("plurinegative", &self.plurinegative),
            ("balanced", &self.balanced),
            ("gauduchon", &self.gauduchon),
            ("guan_li", &self.guan_li),
            ("plurineg_n", &self.plurineg_n),
            ("higher_dim", &self.higher_dim),
        ]
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| property | verdict | certificate | witness |\n");
        out.push_str("|---|---|---|---|\n");
        for (name, p) in self.properties() {
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                name,
                p.verdict.label(),
                escape_cell(&p.certificate),
                p.witness.as_deref().map(escape_cell).unwrap_or_default(),
            ));
        }
        out
    }
}

fn escape_cell(text: &str) -> String {
    text.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_serializes_lowercase() {
        assert_eq!(serde_json::to_string(&Truth::True).unwrap(), "\"true\"");
        assert_eq!(serde_json::to_string(&Truth::Conditional).unwrap(), "\"conditional\"");
        let back: Truth = serde_json::from_str("\"unknown\"").unwrap();
        assert_eq!(back, Truth::Unknown);
    }

    #[test]
    fn conjunction_prefers_the_weakest_knowledge() {
        use Truth::*;
        assert_eq!(True.and(True), True);
        assert_eq!(True.and(False), False);
        assert_eq!(Unknown.and(False), False);
        assert_eq!(True.and(Unknown), Unknown);
        assert_eq!(Conditional.and(Unknown), Unknown);
        assert_eq!(True.and(Conditional), Conditional);
    }

    #[test]
    fn report_field_order_is_stable_in_json() {
        let p = || PropertyReport::new(Truth::True, "c");
        let r = ClassificationReport {
            kahler: p(),
            pluriclosed: p(),
            pluripositive: p(),
            plurinegative: p(),
            balanced: p(),
            gauduchon: p(),
            guan_li: p(),
            plurineg_n: p(),
            higher_dim: p(),
        };
        let json = serde_json::to_string(&r).unwrap();
        let names = [
            "kahler",
            "pluriclosed",
            "pluripositive",
            "plurinegative",
            "balanced",
            "gauduchon",
            "guan_li",
            "plurineg_n",
            "higher_dim",
        ];
        let mut last = 0;
        for name in names {
            let at = json.find(&format!("\"{name}\"")).unwrap();
            assert!(at >= last, "{name} out of order");
            last = at;
        }
    }
}
