//! Deterministic mock backend: scripted responses matched by stage tag or
//! prompt substring, with a seeded filler-text generator for everything
//! else. A byte-identical reply is produced for identical (request, script,
//! seed) inputs.

use std::path::Path;
use std::sync::Mutex;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use super::{Backend, ChatRequest, ChatResponse, GatewayError};

/// Conditions an entry must all satisfy to match a request.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScriptMatcher {
    /// Exact stage tag match.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<String>,
    /// Stage tag prefix match (e.g. `draft` matches `draft_1`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage_prefix: Option<String>,
    /// Substring of the concatenated prompt text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt_contains: Option<String>,
}

impl ScriptMatcher {
    fn matches(&self, request: &ChatRequest) -> bool {
        let stage = request.tag.as_deref().unwrap_or("");
        if let Some(s) = &self.stage {
            if stage != s {
                return false;
            }
        }
        if let Some(p) = &self.stage_prefix {
            if !stage.starts_with(p.as_str()) {
                return false;
            }
        }
        if let Some(needle) = &self.prompt_contains {
            if !request.prompt_text().contains(needle.as_str()) {
                return false;
            }
        }
        true
    }
}

/// One canned response. Token counts default to ceil(len/4) when omitted;
/// `times` bounds how often the entry may serve (unbounded when absent).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScriptEntry {
    #[serde(rename = "match", default)]
    pub matcher: ScriptMatcher,
    pub response: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt_tokens: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion_tokens: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<u64>,
}

impl ScriptEntry {
    pub fn for_stage(stage: &str, response: &str) -> Self {
        Self {
            matcher: ScriptMatcher { stage: Some(stage.into()), ..Default::default() },
            response: response.into(),
            prompt_tokens: None,
            completion_tokens: None,
            times: None,
        }
    }

    pub fn for_stage_prefix(prefix: &str, response: &str) -> Self {
        Self {
            matcher: ScriptMatcher { stage_prefix: Some(prefix.into()), ..Default::default() },
            response: response.into(),
            prompt_tokens: None,
            completion_tokens: None,
            times: None,
        }
    }

    pub fn once(mut self) -> Self {
        self.times = Some(1);
        self
    }
}

/// An ordered list of entries plus the seed for the fallback generator.
#[derive(Debug, Clone)]
pub struct MockScript {
    entries: Vec<ScriptEntry>,
    seed: u64,
}

impl MockScript {
    pub fn new(entries: Vec<ScriptEntry>, seed: u64) -> Self {
        Self { entries, seed }
    }

    /// Empty script: every request goes to the seeded generator.
    pub fn seeded(seed: u64) -> Self {
        Self::new(Vec::new(), seed)
    }

    /// Parse the JSON entry-array format.
    pub fn from_json_str(json: &str, seed: u64) -> Result<Self, serde_json::Error> {
        let entries: Vec<ScriptEntry> = serde_json::from_str(json)?;
        Ok(Self::new(entries, seed))
    }

    pub fn from_json_file(path: &Path, seed: u64) -> Result<Self, GatewayError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GatewayError::InvalidRequest(format!("mock script {path:?}: {e}")))?;
        Self::from_json_str(&text, seed)
            .map_err(|e| GatewayError::InvalidRequest(format!("mock script {path:?}: {e}")))
    }
}

pub struct MockBackend {
    script: MockScript,
    served: Mutex<Vec<u64>>,
}

impl MockBackend {
    pub fn new(script: MockScript) -> Self {
        let served = Mutex::new(vec![0u64; script.entries.len()]);
        Self { script, served }
    }
}

fn approx_tokens(text: &str) -> u64 {
    (text.len() as u64 + 3) / 4
}

/// FNV-1a 64-bit over the request's prompt text, mixed with the seed.
fn fingerprint(request: &ChatRequest, seed: u64) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in request.prompt_text().bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    for byte in request.tag.as_deref().unwrap_or("").bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash ^ seed
}

const FILLER_TOPICS: [&str; 8] = [
    "warm-up discussion",
    "guided exploration",
    "partner investigation",
    "worked example walkthrough",
    "practice task",
    "exit ticket",
    "reflection prompt",
    "extension challenge",
];

const FILLER_VERBS: [&str; 6] = ["compare", "model", "sketch", "justify", "measure", "predict"];

const FILLER_NOUNS: [&str; 8] = [
    "patterns",
    "data tables",
    "diagrams",
    "real-world scenarios",
    "vocabulary cards",
    "number lines",
    "observations",
    "group findings",
];

fn pick<'a>(rng: &mut ChaCha8Rng, options: &[&'a str]) -> &'a str {
    options[(rng.next_u64() % options.len() as u64) as usize]
}

/// Deterministic activity-shaped filler text derived from the fingerprint.
fn generate_filler(request: &ChatRequest, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(fingerprint(request, seed));
    let sections = 3 + (rng.next_u64() % 3) as usize;
    let mut out = String::from("# Generated Activity\n");
    for i in 1..=sections {
        let topic = pick(&mut rng, &FILLER_TOPICS);
        let verb = pick(&mut rng, &FILLER_VERBS);
        let noun = pick(&mut rng, &FILLER_NOUNS);
        let minutes = 5 + (rng.next_u64() % 20);
        out.push_str(&format!(
            "\n## Part {i}: {topic}\nStudents {verb} {noun} for about {minutes} minutes, then share results with the class.\n"
        ));
    }
    out
}

impl Backend for MockBackend {
    fn send(&self, request: &ChatRequest) -> Result<ChatResponse, GatewayError> {
        let mut served = self.served.lock().expect("mock counter lock");
        let mut saw_exhausted_match = false;
        let mut selected: Option<usize> = None;
        for (i, entry) in self.script.entries.iter().enumerate() {
            if !entry.matcher.matches(request) {
                continue;
            }
            match entry.times {
                Some(limit) if served[i] >= limit => {
                    saw_exhausted_match = true;
                }
                _ => {
                    selected = Some(i);
                    break;
                }
            }
        }

        let (content, prompt_tokens, completion_tokens) = match selected {
            Some(i) => {
                served[i] += 1;
                let entry = &self.script.entries[i];
                (
                    entry.response.clone(),
                    entry.prompt_tokens.unwrap_or_else(|| approx_tokens(&request.prompt_text())),
                    entry.completion_tokens.unwrap_or_else(|| approx_tokens(&entry.response)),
                )
            }
            None if saw_exhausted_match => {
                return Err(GatewayError::ScriptExhausted(format!(
                    "stage {:?}",
                    request.tag.as_deref().unwrap_or("<untagged>")
                )));
            }
            None => {
                let text = generate_filler(request, self.script.seed);
                let pt = approx_tokens(&request.prompt_text());
                let ct = approx_tokens(&text);
                (text, pt, ct)
            }
        };

        // deterministic synthetic latency so offline metrics are stable
        let latency_secs = (prompt_tokens + completion_tokens) as f64 / 1000.0;
        Ok(ChatResponse {
            content,
            prompt_tokens,
            completion_tokens,
            latency_secs,
            attempts: 1,
        })
    }

    fn name(&self) -> &'static str {
        "mock"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gateway::ChatMessage;

    fn request(stage: &str, prompt: &str) -> ChatRequest {
        ChatRequest::new("mock-model", vec![ChatMessage::user(prompt)]).tagged(stage)
    }

    #[test]
    fn scripted_stage_returns_exact_content() {
        let script = MockScript::new(
            vec![ScriptEntry::for_stage("kc", "KC1: slope (concept)")],
            0,
        );
        let backend = MockBackend::new(script);
        let r = backend.send(&request("kc", "list the knowledge components")).unwrap();
        assert_eq!(r.content, "KC1: slope (concept)");
    }

    #[test]
    fn same_prompt_same_seed_is_byte_identical() {
        let a = MockBackend::new(MockScript::seeded(42));
        let b = MockBackend::new(MockScript::seeded(42));
        let req = request("design", "draft an activity about slope");
        assert_eq!(a.send(&req).unwrap(), b.send(&req).unwrap());

        // and twice against the same backend
        assert_eq!(a.send(&req).unwrap(), a.send(&req).unwrap());
    }

    #[test]
    fn different_seed_changes_filler() {
        let a = MockBackend::new(MockScript::seeded(1));
        let b = MockBackend::new(MockScript::seeded(2));
        let req = request("design", "draft an activity about slope");
        assert_ne!(a.send(&req).unwrap().content, b.send(&req).unwrap().content);
    }

    #[test]
    fn finite_script_exhausts() {
        let script = MockScript::new(vec![ScriptEntry::for_stage("kc", "only once").once()], 0);
        let backend = MockBackend::new(script);
        let req = request("kc", "anything");
        assert!(backend.send(&req).is_ok());
        assert!(matches!(
            backend.send(&req),
            Err(GatewayError::ScriptExhausted(_))
        ));
    }

    #[test]
    fn sequential_entries_serve_in_order() {
        let script = MockScript::new(
            vec![
                ScriptEntry::for_stage("feedback", "DECISION: REVISE\nneeds pacing").once(),
                ScriptEntry::for_stage("feedback", "DECISION: ACCEPT"),
            ],
            0,
        );
        let backend = MockBackend::new(script);
        let req = request("feedback", "check this");
        assert!(backend.send(&req).unwrap().content.contains("REVISE"));
        assert!(backend.send(&req).unwrap().content.contains("ACCEPT"));
        assert!(backend.send(&req).unwrap().content.contains("ACCEPT"));
    }

    #[test]
    fn token_counts_follow_len_over_four() {
        let backend = MockBackend::new(MockScript::new(
            vec![ScriptEntry::for_stage("kc", "abcdefgh")], // 8 chars → 2 tokens
            0,
        ));
        let r = backend.send(&request("kc", "12345")).unwrap(); // 5 chars → 2 tokens
        assert_eq!(r.completion_tokens, 2);
        assert_eq!(r.prompt_tokens, 2);
    }

    #[test]
    fn json_entry_format_round_trips() {
        let json = r#"[
            {"match": {"stage": "kc"}, "response": "slope | concept", "prompt_tokens": 7, "completion_tokens": 9}
        ]"#;
        let script = MockScript::from_json_str(json, 5).unwrap();
        let backend = MockBackend::new(script);
        let r = backend.send(&request("kc", "x")).unwrap();
        assert_eq!(r.content, "slope | concept");
        assert_eq!((r.prompt_tokens, r.completion_tokens), (7, 9));
    }

    #[test]
    fn prompt_contains_matcher() {
        let json = r#"[
            {"match": {"prompt_contains": "polygon"}, "response": "polygon reply"}
        ]"#;
        let script = MockScript::from_json_str(json, 0).unwrap();
        let backend = MockBackend::new(script);
        assert_eq!(
            backend.send(&request("any", "classify polygon types")).unwrap().content,
            "polygon reply"
        );
        // non-matching prompt falls through to filler
        assert!(backend
            .send(&request("any", "something else"))
            .unwrap()
            .content
            .starts_with("# Generated Activity"));
    }
}
