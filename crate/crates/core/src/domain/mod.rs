//! Pedagogical and evaluation domain types shared across the toolkit.

mod scores;

pub use scores::{IlsScores, QmScores, ILS_CRITERION_KEYS, ILS_DIMENSION_SIZES, QM_CRITERION_KEYS};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("objective {id:?} has empty objective text")]
    EmptyObjectiveText { id: String },

    #[error("objective id is empty")]
    EmptyId,

    #[error("duplicate objective id {id:?}")]
    DuplicateId { id: String },

    #[error("activity body is empty")]
    EmptyBody,

    #[error("knowledge component set is empty")]
    EmptyKcSet,

    #[error("knowledge component label is empty")]
    EmptyKcLabel,

    #[error("instructional principle description is empty")]
    EmptyPrincipleDescription,

    #[error("criterion {criterion} score {value} outside 0..={max}")]
    ScoreOutOfRange { criterion: String, value: i64, max: u8 },

    #[error("expected {expected} criterion scores, got {got}")]
    WrongCriterionCount { expected: usize, got: usize },

    #[error("generation transcript is empty")]
    EmptyTranscript,

    #[error("revision verdict requested changes without notes")]
    EmptyRevisionNotes,
}

/// Subject domain an objective belongs to. Values other than Math/Science
/// are preserved verbatim rather than rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subject {
    Math,
    Science,
    Other(String),
}

impl Subject {
    /// Maps free-form subject text; anything but Math/Science becomes
    /// `Other` with the original spelling kept.
    pub fn parse(raw: &str) -> Self {
        match raw.trim().to_ascii_lowercase().as_str() {
            "math" | "mathematics" => Subject::Math,
            "science" => Subject::Science,
            _ => Subject::Other(raw.trim().to_string()),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            Subject::Math => "Math",
            Subject::Science => "Science",
            Subject::Other(s) => s,
        }
    }
}

impl std::fmt::Display for Subject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Context fed to every generation pipeline: what to teach, to whom, and
/// against which standard.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningObjective {
    pub id: String,
    pub subject: Subject,
    pub grade_level: String,
    pub standard: String,
    pub objective_text: String,
}

/// Raw parsed record before validation (one JSON-lines entry).
#[derive(Debug, Clone, Deserialize)]
pub struct RawObjective {
    pub id: String,
    pub subject: String,
    #[serde(default)]
    pub grade_level: String,
    #[serde(default)]
    pub standard: String,
    pub objective: String,
}

/// Validates one raw record into a [`LearningObjective`]. Unknown subjects
/// map to [`Subject::Other`] with a warning; empty objective text is an
/// error. Corpus-level id uniqueness is checked by the loader.
pub fn validate_objective(raw: &RawObjective) -> Result<LearningObjective, DomainError> {
    if raw.id.trim().is_empty() {
        return Err(DomainError::EmptyId);
    }
    if raw.objective.trim().is_empty() {
        return Err(DomainError::EmptyObjectiveText { id: raw.id.clone() });
    }
    let subject = Subject::parse(&raw.subject);
    if let Subject::Other(name) = &subject {
        log::warn!("objective {}: subject {name:?} is neither Math nor Science", raw.id);
    }
    Ok(LearningObjective {
        id: raw.id.trim().to_string(),
        subject,
        grade_level: raw.grade_level.trim().to_string(),
        standard: raw.standard.trim().to_string(),
        objective_text: raw.objective.trim().to_string(),
    })
}

/// Curriculum-design stance handed to a drafting agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TeacherPersona {
    Behaviorist,
    Constructivist,
    Aesthetic,
    Ecological,
    IntegratedSocialEmotional,
}

impl TeacherPersona {
    pub const ALL: [TeacherPersona; 5] = [
        TeacherPersona::Behaviorist,
        TeacherPersona::Constructivist,
        TeacherPersona::Aesthetic,
        TeacherPersona::Ecological,
        TeacherPersona::IntegratedSocialEmotional,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            TeacherPersona::Behaviorist => "Behaviorist",
            TeacherPersona::Constructivist => "Constructivist",
            TeacherPersona::Aesthetic => "Aesthetic",
            TeacherPersona::Ecological => "Ecological",
            TeacherPersona::IntegratedSocialEmotional => "Integrated Social-Emotional",
        }
    }
}

impl std::fmt::Display for TeacherPersona {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// The three ways robust learning happens; a generated activity targets one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LearningProcess {
    MemoryAndFluency,
    InductionAndRefinement,
    UnderstandingAndSenseMaking,
}

impl LearningProcess {
    pub const ALL: [LearningProcess; 3] = [
        LearningProcess::MemoryAndFluency,
        LearningProcess::InductionAndRefinement,
        LearningProcess::UnderstandingAndSenseMaking,
    ];

    pub fn canonical_name(&self) -> &'static str {
        match self {
            LearningProcess::MemoryAndFluency => "memory and fluency building",
            LearningProcess::InductionAndRefinement => "induction and refinement",
            LearningProcess::UnderstandingAndSenseMaking => "understanding and sense-making",
        }
    }
}

/// Kind of learnable content a knowledge component captures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KcKind {
    Fact,
    Concept,
    Principle,
    Procedure,
}

impl KcKind {
    pub fn label(&self) -> &'static str {
        match self {
            KcKind::Fact => "fact",
            KcKind::Concept => "concept",
            KcKind::Principle => "principle",
            KcKind::Procedure => "procedure",
        }
    }

    pub fn parse(raw: &str) -> Option<Self> {
        match raw.trim().to_ascii_lowercase().as_str() {
            "fact" => Some(KcKind::Fact),
            "concept" => Some(KcKind::Concept),
            "principle" => Some(KcKind::Principle),
            "procedure" => Some(KcKind::Procedure),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnowledgeComponent {
    pub label: String,
    pub kind: KcKind,
}

/// Non-empty set of knowledge components extracted for an objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnowledgeComponentSet {
    items: Vec<KnowledgeComponent>,
}

impl KnowledgeComponentSet {
    pub fn new(items: Vec<KnowledgeComponent>) -> Result<Self, DomainError> {
        if items.is_empty() {
            return Err(DomainError::EmptyKcSet);
        }
        if items.iter().any(|kc| kc.label.trim().is_empty()) {
            return Err(DomainError::EmptyKcLabel);
        }
        Ok(Self { items })
    }

    pub fn items(&self) -> &[KnowledgeComponent] {
        &self.items
    }
}

/// Canonical tags for the instructional principles named by the KLI
/// taxonomy; anything else stays `Other` with its description intact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrincipleTag {
    SpacingAndTesting,
    WorkedExamples,
    PromptedSelfExplanation,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstructionalPrinciple {
    pub description: String,
    pub canonical_tag: Option<PrincipleTag>,
}

impl InstructionalPrinciple {
    pub fn new(description: String, canonical_tag: Option<PrincipleTag>) -> Result<Self, DomainError> {
        if description.trim().is_empty() {
            return Err(DomainError::EmptyPrincipleDescription);
        }
        Ok(Self { description, canonical_tag })
    }
}

/// Which generation architecture produced an activity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SystemId {
    Sas,
    MasRoles,
    MasCmd,
}

impl SystemId {
    pub const ALL: [SystemId; 3] = [SystemId::Sas, SystemId::MasRoles, SystemId::MasCmd];

    pub fn label(&self) -> &'static str {
        match self {
            SystemId::Sas => "SAS",
            SystemId::MasRoles => "MAS-Roles",
            SystemId::MasCmd => "MAS-CMD",
        }
    }

    /// Directory-safe lowercase name.
    pub fn slug(&self) -> &'static str {
        match self {
            SystemId::Sas => "sas",
            SystemId::MasRoles => "roles",
            SystemId::MasCmd => "cmd",
        }
    }

    pub fn parse(raw: &str) -> Option<Self> {
        match raw.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "sas" => Some(SystemId::Sas),
            "mas-roles" | "roles" => Some(SystemId::MasRoles),
            "mas-cmd" | "cmd" => Some(SystemId::MasCmd),
            _ => None,
        }
    }
}

impl std::fmt::Display for SystemId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A generated learning activity: sectioned markdown text plus provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningActivity {
    pub objective_id: String,
    pub title: String,
    pub body: String,
    pub system_id: SystemId,
    pub model_id: String,
    pub persona: Option<TeacherPersona>,
}

impl LearningActivity {
    pub fn new(
        objective_id: String,
        title: String,
        body: String,
        system_id: SystemId,
        model_id: String,
        persona: Option<TeacherPersona>,
    ) -> Result<Self, DomainError> {
        if body.trim().is_empty() {
            return Err(DomainError::EmptyBody);
        }
        Ok(Self { objective_id, title, body, system_id, model_id, persona })
    }
}

/// One prompt/response exchange in a pipeline transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentTurn {
    pub stage: String,
    pub role_label: String,
    pub prompt: String,
    pub response: String,
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
    pub latency_secs: f64,
}

/// Cost telemetry for one generation: wall time, total tokens, requests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationMetrics {
    pub wall_time_secs: f64,
    pub tokens_total: u64,
    pub requests_made: u64,
}

impl GenerationMetrics {
    /// Derives metrics from a transcript so the conservation invariants
    /// (requests == turns, tokens == per-turn sum) hold by construction.
    pub fn from_transcript(transcript: &[AgentTurn]) -> Result<Self, DomainError> {
        if transcript.is_empty() {
            return Err(DomainError::EmptyTranscript);
        }
        Ok(Self {
            wall_time_secs: transcript.iter().map(|t| t.latency_secs).sum(),
            tokens_total: transcript
                .iter()
                .map(|t| t.prompt_tokens + t.completion_tokens)
                .sum(),
            requests_made: transcript.len() as u64,
        })
    }
}

/// Final activity plus the full agent transcript and cost metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub activity: LearningActivity,
    pub transcript: Vec<AgentTurn>,
    pub metrics: GenerationMetrics,
    /// Out-of-band markers such as `accepted_at_cap` or `selection_reask`.
    #[serde(default)]
    pub flags: Vec<String>,
}

impl GenerationRecord {
    pub fn new(
        activity: LearningActivity,
        transcript: Vec<AgentTurn>,
        flags: Vec<String>,
    ) -> Result<Self, DomainError> {
        let metrics = GenerationMetrics::from_transcript(&transcript)?;
        Ok(Self { activity, transcript, metrics, flags })
    }
}
