use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use serde_json::Value;

use super::EnrichError;

/// System prompt with `{schema_keys}` and `{enum_block}` placeholders.
pub const SYSTEM_PROMPT_TEMPLATE: &str = include_str!("system_prompt.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "values", rename_all = "snake_case")]
pub enum AllowedAnswers {
    Any,
    YesNo,
    Keywords(Vec<String>),
    AnyLong,
}

impl AllowedAnswers {
    /// Reads an allowed-answers cell: `any`, `any long`, `yes, no`, or a
    /// comma-separated keyword list whose items may be quoted.
    pub fn parse(cell: &str) -> Result<Self, EnrichError> {
        let norm = cell.trim().to_lowercase();
        match norm.as_str() {
            "any" => return Ok(AllowedAnswers::Any),
            "any long" => return Ok(AllowedAnswers::AnyLong),
            _ => {}
        }
        let items: Vec<String> = cell
            .split(',')
            .map(|s| {
                s.trim()
                    .trim_matches(|c| matches!(c, '‘' | '’' | '\'' | '"' | '“' | '”'))
                    .trim()
            })
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        if items.is_empty() {
            return Err(EnrichError::SchemaFormat(format!("no allowed answers in '{cell}'")));
        }
        let mut lower: Vec<String> = items.iter().map(|s| s.to_lowercase()).collect();
        lower.sort();
        if lower == ["no", "yes"] {
            return Ok(AllowedAnswers::YesNo);
        }
        Ok(AllowedAnswers::Keywords(items))
    }

    fn allowed(&self) -> Option<Vec<&str>> {
        match self {
            AllowedAnswers::YesNo => Some(vec!["yes", "no"]),
            AllowedAnswers::Keywords(k) => Some(k.iter().map(String::as_str).collect()),
            AllowedAnswers::Any | AllowedAnswers::AnyLong => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemaEntry {
    pub category_name: String,
    pub category_definition: String,
    pub allowed_answers: AllowedAnswers,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct ExtractionSchema {
    /// In file order; names are unique.
    pub entries: Vec<SchemaEntry>,
}

impl ExtractionSchema {
    pub fn get(&self, name: &str) -> Option<&SchemaEntry> {
        self.entries.iter().find(|e| e.category_name == name)
    }
}

const COLUMNS: [&str; 3] = ["category name", "category definition", "allowed answers"];

/// Reads a three-column schema CSV with a header row.
pub fn parse_schema(csv_text: &str) -> Result<ExtractionSchema, EnrichError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(csv_text.as_bytes());
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| EnrichError::SchemaFormat(e.to_string()))?
        .iter()
        .map(|h| h.trim().to_lowercase().replace('_', " "))
        .collect();
    if header != COLUMNS {
        return Err(EnrichError::SchemaFormat(format!(
            "expected columns {COLUMNS:?}, found {header:?}"
        )));
    }
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| EnrichError::SchemaFormat(e.to_string()))?;
        let name = rec[0].trim().to_string();
        if name.is_empty() {
            return Err(EnrichError::SchemaFormat(format!("row {}: empty category name", i + 1)));
        }
        if !seen.insert(name.clone()) {
            return Err(EnrichError::SchemaFormat(format!("duplicate category '{name}'")));
        }
        entries.push(SchemaEntry {
            category_name: name,
            category_definition: rec[1].trim().to_string(),
            allowed_answers: AllowedAnswers::parse(&rec[2])?,
        });
    }
    Ok(ExtractionSchema { entries })
}

/// Fills the prompt template: one schema key per line, and one line of
/// allowed answers per category.
pub fn render_system_prompt(schema: &ExtractionSchema) -> String {
    let keys: Vec<&str> = schema.entries.iter().map(|e| e.category_name.as_str()).collect();
    let enums: Vec<String> = schema
        .entries
        .iter()
        .map(|e| {
            let answers = match &e.allowed_answers {
                AllowedAnswers::Any => "\"any\"".to_string(),
                AllowedAnswers::AnyLong => "\"any long\"".to_string(),
                other => Value::from(other.allowed().unwrap_or_default()).to_string(),
            };
            format!("- {}: {answers}", e.category_name)
        })
        .collect();
    SYSTEM_PROMPT_TEMPLATE
        .replace("{schema_keys}", &keys.join("\n"))
        .replace("{enum_block}", &enums.join("\n"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResponseWarning {
    UnknownCategory { category: String },
    UnknownValue { category: String, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct ResponseRow {
    /// One cell per schema category; multiple values are `;`-joined.
    pub cells: BTreeMap<String, String>,
    pub warnings: Vec<ResponseWarning>,
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => None,
        Value::String(s) => Some(s.trim().to_string()).filter(|s| !s.is_empty()),
        other => Some(other.to_string()),
    }
}

/// Keeps the schema's categories of a model response, flattening arrays to
/// `;`-joined cells. Values outside a category's allowed answers are kept
/// and reported; so are keys the schema does not know.
pub fn parse_llm_response(json_text: &str, schema: &ExtractionSchema) -> Result<ResponseRow, EnrichError> {
    let value: Value =
        serde_json::from_str(json_text.trim()).map_err(|e| EnrichError::ResponseNotJson(e.to_string()))?;
    let Value::Object(obj) = value else {
        return Err(EnrichError::ResponseNotJson(format!("top-level value is {value}")));
    };
    let mut row = ResponseRow::default();
    for key in obj.keys() {
        if schema.get(key).is_none() {
            row.warnings
                .push(ResponseWarning::UnknownCategory { category: key.clone() });
        }
    }
    for entry in &schema.entries {
        let name = &entry.category_name;
        let raw: Vec<String> = match obj.get(name) {
            None => Vec::new(),
            Some(Value::Array(items)) => items.iter().filter_map(scalar).collect(),
            Some(v) => scalar(v).into_iter().collect(),
        };
        let allowed = entry.allowed_answers.allowed();
        let mut values = Vec::with_capacity(raw.len());
        for v in raw {
            match &allowed {
                None => values.push(v),
                Some(list) => match list.iter().find(|a| a.to_lowercase() == v.to_lowercase()) {
                    Some(a) => values.push(a.to_string()),
                    None => {
                        row.warnings.push(ResponseWarning::UnknownValue {
                            category: name.clone(),
                            value: v.clone(),
                        });
                        values.push(v);
                    }
                },
            }
        }
        row.cells.insert(name.clone(), values.join(";"));
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHEMA: &str = "category name,category definition,allowed answers\n\
        keywords,Keywords that describe the publication and its content,any\n\
        grassland,Did the study take place in grasslands?,\"yes, no\"\n\
        environmental descriptors,What environmental descriptors can be used?,\"‘managed land use’, ‘soil’, ‘none’\"\n\
        abstract,Free text,any long\n";

    #[test]
    fn schema_kinds() {
        let s = parse_schema(SCHEMA).unwrap();
        let kinds: Vec<_> = s.entries.iter().map(|e| e.allowed_answers.clone()).collect();
        assert_eq!(
            kinds,
            [
                AllowedAnswers::Any,
                AllowedAnswers::YesNo,
                AllowedAnswers::Keywords(vec!["managed land use".into(), "soil".into(), "none".into()]),
                AllowedAnswers::AnyLong,
            ]
        );
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_schema("a,b\nx,y\n"), Err(EnrichError::SchemaFormat(_))));
        let dup = "category name,category definition,allowed answers\nx,d,any\nx,d,any\n";
        assert!(matches!(parse_schema(dup), Err(EnrichError::SchemaFormat(_))));
        let empty = "category name,category definition,allowed answers\nx,d,\" , \"\n";
        assert!(matches!(parse_schema(empty), Err(EnrichError::SchemaFormat(_))));
    }

    #[test]
    fn prompt_rendering() {
        let p = render_system_prompt(&parse_schema(SCHEMA).unwrap());
        assert!(!p.contains("{schema_keys}") && !p.contains("{enum_block}"));
        assert!(p.contains("SCHEMA KEYS:\nkeywords\ngrassland\nenvironmental descriptors\nabstract\nMULTI-SELECT"));
        assert!(p.contains("- grassland: [\"yes\",\"no\"]\n"));
        assert!(p.contains("- environmental descriptors: [\"managed land use\",\"soil\",\"none\"]\n"));
        assert!(p.contains("- keywords: \"any\"\n"));
        assert!(p.contains("- abstract: \"any long\"\nReturn only"));
    }

    #[test]
    fn response_parsing() {
        let s = parse_schema(SCHEMA).unwrap();
        let r = parse_llm_response(r#"{"grassland":["yes"]}"#, &s).unwrap();
        assert_eq!(r.cells["grassland"], "yes");
        assert_eq!(r.cells["keywords"], "");
        assert!(r.warnings.is_empty());

        let r = parse_llm_response(
            r#" {"foo": 1, "keywords": ["soil biodiversity", "grassland"], "environmental descriptors": ["Soil", "rain"], "grassland": null} "#,
            &s,
        )
        .unwrap();
        assert_eq!(r.cells["keywords"], "soil biodiversity;grassland");
        assert_eq!(r.cells["environmental descriptors"], "soil;rain");
        assert!(!r.cells.contains_key("foo"));
        assert_eq!(
            r.warnings,
            [
                ResponseWarning::UnknownCategory { category: "foo".into() },
                ResponseWarning::UnknownValue {
                    category: "environmental descriptors".into(),
                    value: "rain".into()
                },
            ]
        );
        assert!(matches!(
            parse_llm_response("[1]", &s),
            Err(EnrichError::ResponseNotJson(_))
        ));
        assert!(matches!(
            parse_llm_response("Sure! {", &s),
            Err(EnrichError::ResponseNotJson(_))
        ));
    }
}
