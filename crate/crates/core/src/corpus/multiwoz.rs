use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Value};

use super::{exchange, Corpus, Dialogue, LoadDiagnostic, Turn};
use crate::ontology::{normalize_value, DialogueState, Domain, Ontology, SlotValue, ValueKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MultiwozVersion {
    #[serde(rename = "2.0")]
    V20,
    #[serde(rename = "2.1")]
    V21,
}

impl FromStr for MultiwozVersion {
    type Err = LoadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().trim_start_matches('v') {
            "2.0" | "20" | "2" => Ok(MultiwozVersion::V20),
            "2.1" | "21" => Ok(MultiwozVersion::V21),
            _ => Err(LoadError::UnknownVersion(s.to_string())),
        }
    }
}

impl fmt::Display for MultiwozVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MultiwozVersion::V20 => "2.0",
            MultiwozVersion::V21 => "2.1",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("unknown MultiWoZ version `{0}` (expected 2.0 or 2.1)")]
    UnknownVersion(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: not a readable zip archive: {source}")]
    Zip {
        path: PathBuf,
        source: zip::result::ZipError,
    },
    #[error("{0}: no data.json found")]
    MissingData(PathBuf),
    #[error("{file}: {source}")]
    Json {
        file: String,
        source: serde_json::Error,
    },
    #[error("{0}: top level must be an object keyed by dialogue id")]
    NotAnObject(String),
}

const DATA_FILE: &str = "data.json";
const DEV_LISTS: [&str; 2] = ["valListFile.txt", "valListFile.json"];
const TEST_LISTS: [&str; 2] = ["testListFile.txt", "testListFile.json"];

/// Metadata keys that are bookkeeping rather than slots.
const IGNORED_KEYS: [&str; 4] = ["booked", "ticket", "trainID", "reference"];

/// Loads a MultiWoZ release from a directory (searched two levels deep) or
/// a zip archive. Dialogues listed in the dev and test list files go to
/// those splits, the rest to train.
pub fn load_multiwoz(path: impl AsRef<Path>, version: &str) -> Result<Corpus, LoadError> {
    let version: MultiwozVersion = version.parse()?;
    let path = path.as_ref();
    let files = if path.is_dir() {
        read_dir_files(path)?
    } else {
        read_zip_files(path)?
    };
    let find = |names: &[&str]| {
        files
            .iter()
            .find(|(name, _)| names.contains(&name.as_str()))
            .map(|(_, text)| text.as_str())
    };
    let data = find(&[DATA_FILE]).ok_or_else(|| LoadError::MissingData(path.to_path_buf()))?;
    let dev_ids = id_list(find(&DEV_LISTS).unwrap_or(""));
    let test_ids = id_list(find(&TEST_LISTS).unwrap_or(""));

    let raw: Value = serde_json::from_str(data).map_err(|source| LoadError::Json {
        file: DATA_FILE.into(),
        source,
    })?;
    let Value::Object(dialogues) = raw else {
        return Err(LoadError::NotAnObject(DATA_FILE.into()));
    };

    let ont = Ontology::multiwoz();
    let mut corpus = Corpus {
        version: Some(version),
        ..Corpus::default()
    };
    let mut ids: Vec<&String> = dialogues.keys().collect();
    ids.sort();
    for id in ids {
        let mut diags = Vec::new();
        match convert_dialogue(&ont, id, &dialogues[id.as_str()], &mut diags) {
            Ok(Some(dialogue)) => {
                let bucket = if dev_ids.contains(id.as_str()) {
                    &mut corpus.dev
                } else if test_ids.contains(id.as_str()) {
                    &mut corpus.test
                } else {
                    &mut corpus.train
                };
                bucket.push(dialogue);
            }
            Ok(None) => {}
            Err(message) => diags.push(message),
        }
        corpus.diagnostics.extend(diags.into_iter().map(|message| LoadDiagnostic {
            dialogue_id: id.clone(),
            message,
        }));
    }
    Ok(corpus)
}

fn id_list(text: &str) -> HashSet<&str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).collect()
}

fn wanted(name: &str) -> bool {
    name == DATA_FILE || DEV_LISTS.contains(&name) || TEST_LISTS.contains(&name)
}

fn read_dir_files(dir: &Path) -> Result<Vec<(String, String)>, LoadError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| LoadError::Io { path, source }
    };
    let mut out = Vec::new();
    let mut stack = vec![(dir.to_path_buf(), 0)];
    while let Some((current, depth)) = stack.pop() {
        let mut entries: Vec<_> = fs::read_dir(&current)
            .map_err(io(&current))?
            .filter_map(Result::ok)
            .map(|e| e.path())
            .collect();
        entries.sort();
        for entry in entries {
            let name = entry.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
            if entry.is_dir() && depth < 2 {
                stack.push((entry, depth + 1));
            } else if wanted(&name) && !out.iter().any(|(n, _)| *n == name) {
                let text = fs::read_to_string(&entry).map_err(io(&entry))?;
                out.push((name, text));
            }
        }
    }
    Ok(out)
}

fn read_zip_files(path: &Path) -> Result<Vec<(String, String)>, LoadError> {
    let file = fs::File::open(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let zip_err = |source| LoadError::Zip {
        path: path.to_path_buf(),
        source,
    };
    let mut archive = zip::ZipArchive::new(file).map_err(zip_err)?;
    let mut out = Vec::new();
    for i in 0..archive.len() {
        let mut entry = archive.by_index(i).map_err(zip_err)?;
        let name = entry.name().rsplit('/').next().unwrap_or_default().to_string();
        if entry.is_file() && wanted(&name) && !name.is_empty() && !out.iter().any(|(n, _)| *n == name) {
            let mut text = String::new();
            entry.read_to_string(&mut text).map_err(|source| LoadError::Io {
                path: path.join(entry.name()),
                source,
            })?;
            out.push((name, text));
        }
    }
    Ok(out)
}

/// `Ok(None)` means the dialogue has no supported domain.
fn convert_dialogue(
    ont: &Ontology,
    id: &str,
    raw: &Value,
    diags: &mut Vec<String>,
) -> Result<Option<Dialogue>, String> {
    let goal = raw.get("goal").and_then(Value::as_object).ok_or("missing goal object")?;
    let log = raw.get("log").and_then(Value::as_array).ok_or("missing log array")?;

    let domains: Vec<Domain> = Domain::ALL
        .into_iter()
        .filter(|d| {
            goal.get(d.as_str())
                .and_then(Value::as_object)
                .is_some_and(|g| !g.is_empty())
        })
        .collect();
    if domains.is_empty() {
        return Ok(None);
    }

    let mut turns = Vec::new();
    let mut history: Vec<String> = Vec::new();
    let mut system = String::new();
    for (index, pair) in log.chunks(2).enumerate() {
        let [user, reply] = pair else {
            diags.push(format!("turn {index}: user entry without a system reply; dropped"));
            break;
        };
        let user_text = utterance(user).ok_or_else(|| format!("log entry {}: missing text", 2 * index))?;
        let metadata = reply
            .get("metadata")
            .and_then(Value::as_object)
            .ok_or_else(|| format!("log entry {}: missing metadata", 2 * index + 1))?;
        let state = convert_state(ont, metadata, index, diags);
        history.push(exchange(&system, &user_text));
        turns.push(Turn {
            index,
            system_utterance: std::mem::take(&mut system),
            user_utterance: user_text,
            state,
            history_text: history.join("\n"),
        });
        system = utterance(reply).unwrap_or_default();
    }
    Ok(Some(Dialogue {
        id: id.to_string(),
        domains,
        turns,
    }))
}

fn utterance(entry: &Value) -> Option<String> {
    entry
        .get("text")
        .and_then(Value::as_str)
        .map(|t| t.split_whitespace().collect::<Vec<_>>().join(" "))
}

fn convert_state(
    ont: &Ontology,
    metadata: &Map<String, Value>,
    turn: usize,
    diags: &mut Vec<String>,
) -> DialogueState {
    let mut state = DialogueState::new();
    for domain in Domain::ALL {
        let Some(parts) = metadata.get(domain.as_str()).and_then(Value::as_object) else {
            continue;
        };
        for (part, prefix) in [("book", "book "), ("semi", "")] {
            let Some(slots) = parts.get(part).and_then(Value::as_object) else {
                continue;
            };
            for (key, value) in slots {
                if IGNORED_KEYS.contains(&key.as_str()) {
                    continue;
                }
                let Some(raw) = value.as_str() else {
                    diags.push(format!("turn {turn}: {domain} {key} is not a string"));
                    continue;
                };
                let name = format!("{domain}-{prefix}{}", key.to_lowercase());
                let Some(spec) = ont.slot(&name) else {
                    diags.push(format!("turn {turn}: unknown slot {name}"));
                    continue;
                };
                let value = match SlotValue::parse(&raw.to_lowercase()) {
                    SlotValue::None => continue,
                    SlotValue::Literal(v) if spec.kind().is_boolean() => match v.as_str() {
                        "yes" | "free" => SlotValue::literal("yes"),
                        "no" => SlotValue::literal("no"),
                        other => {
                            diags.push(format!("turn {turn}: {name} has non-boolean value `{other}`; dropped"));
                            continue;
                        }
                    },
                    SlotValue::Literal(v) => match spec.kind() {
                        ValueKind::Categorical(options) if !options.contains(&v) => {
                            diags.push(format!("turn {turn}: {name} value `{v}` outside its categories; dropped"));
                            continue;
                        }
                        _ => SlotValue::Literal(normalize_value(&v)),
                    },
                    SlotValue::Dontcare => SlotValue::Dontcare,
                };
                state.insert(name, value);
            }
        }
    }
    state
}
