//! Provider-agnostic chat-completion client with retry, token metering, and
//! a deterministic mock backend for offline runs.

mod http;
mod mock;

pub use http::{HttpBackend, WireProtocol};
pub use mock::{MockBackend, MockScript, ScriptEntry, ScriptMatcher};

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GatewayError {
    /// Transient failure (network, timeout, rate limit); retried up to the
    /// configured attempt cap.
    #[error("transport failure: {0}")]
    Transport(String),

    /// Non-retryable provider rejection.
    #[error("provider error (status {status}): {message}")]
    Provider { status: u16, message: String },

    #[error("completion content is empty")]
    EmptyCompletion,

    #[error("authentication failure: {0}")]
    Auth(String),

    #[error("mock script exhausted: {0}")]
    ScriptExhausted(String),

    #[error("invalid chat request: {0}")]
    InvalidRequest(String),
}

impl GatewayError {
    pub fn is_retryable(&self) -> bool {
        matches!(self, GatewayError::Transport(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChatRole {
    System,
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: ChatRole,
    pub content: String,
}

impl ChatMessage {
    pub fn system(content: impl Into<String>) -> Self {
        Self { role: ChatRole::System, content: content.into() }
    }

    pub fn user(content: impl Into<String>) -> Self {
        Self { role: ChatRole::User, content: content.into() }
    }
}

/// One chat-completion request. `temperature`/`top_p` are omitted from the
/// wire payload when `None` so the provider default applies. The `tag`
/// names the pipeline stage for transcripts and mock-script matching; it is
/// never sent to a provider.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model_id: String,
    pub messages: Vec<ChatMessage>,
    pub temperature: Option<f64>,
    pub top_p: Option<f64>,
    pub tag: Option<String>,
}

impl ChatRequest {
    pub fn new(model_id: impl Into<String>, messages: Vec<ChatMessage>) -> Self {
        Self {
            model_id: model_id.into(),
            messages,
            temperature: None,
            top_p: None,
            tag: None,
        }
    }

    pub fn tagged(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }

    pub fn validate(&self) -> Result<(), GatewayError> {
        if self.messages.is_empty() {
            return Err(GatewayError::InvalidRequest("no messages".into()));
        }
        for m in &self.messages {
            if matches!(m.role, ChatRole::System | ChatRole::User) && m.content.trim().is_empty() {
                return Err(GatewayError::InvalidRequest(format!(
                    "{:?} message with empty content",
                    m.role
                )));
            }
        }
        Ok(())
    }

    /// Concatenated prompt text (used for transcripts and fingerprinting).
    pub fn prompt_text(&self) -> String {
        self.messages
            .iter()
            .map(|m| m.content.as_str())
            .collect::<Vec<_>>()
            .join("\n\n")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatResponse {
    pub content: String,
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
    pub latency_secs: f64,
    /// Transport attempts spent on this logical request (1 when the first
    /// attempt succeeded).
    #[serde(default = "one")]
    pub attempts: u32,
}

fn one() -> u32 {
    1
}

/// A chat-completion transport: one provider adapter or the mock.
pub trait Backend: Send + Sync {
    fn send(&self, request: &ChatRequest) -> Result<ChatResponse, GatewayError>;
    fn name(&self) -> &'static str;
}

/// Cumulative request/token/time accounting. Counters only grow; logical
/// requests count once regardless of transport retries.
#[derive(Debug, Default)]
pub struct UsageMeter {
    requests: AtomicU64,
    tokens: AtomicU64,
    wall_time_micros: AtomicU64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeterSnapshot {
    pub requests: u64,
    pub tokens: u64,
    pub wall_time_secs: f64,
}

impl UsageMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self, response: &ChatResponse) {
        self.requests.fetch_add(1, Ordering::Relaxed);
        self.tokens
            .fetch_add(response.prompt_tokens + response.completion_tokens, Ordering::Relaxed);
        self.wall_time_micros
            .fetch_add((response.latency_secs * 1e6) as u64, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> MeterSnapshot {
        MeterSnapshot {
            requests: self.requests.load(Ordering::Relaxed),
            tokens: self.tokens.load(Ordering::Relaxed),
            wall_time_secs: self.wall_time_micros.load(Ordering::Relaxed) as f64 / 1e6,
        }
    }
}

/// Bounded exponential backoff: `base · factor^(attempt−1)` before attempt
/// 2, 3, ... up to `max_attempts` total attempts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetryPolicy {
    pub max_attempts: u32,
    pub base_delay_ms: u64,
    pub factor: f64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self { max_attempts: 3, base_delay_ms: 1000, factor: 2.0 }
    }
}

impl RetryPolicy {
    /// No-delay policy for tests and mock runs.
    pub fn immediate(max_attempts: u32) -> Self {
        Self { max_attempts, base_delay_ms: 0, factor: 2.0 }
    }

    pub fn delay_before_attempt(&self, next_attempt: u32) -> Duration {
        let exponent = next_attempt.saturating_sub(2);
        let ms = self.base_delay_ms as f64 * self.factor.powi(exponent as i32);
        Duration::from_millis(ms as u64)
    }
}

/// The one entry point every agent goes through: validates, retries
/// transient failures with backoff, rejects empty completions, and meters
/// exactly one request per call.
pub struct Gateway {
    backend: Box<dyn Backend>,
    retry: RetryPolicy,
    meter: UsageMeter,
}

impl Gateway {
    pub fn new(backend: Box<dyn Backend>, retry: RetryPolicy) -> Self {
        Self { backend, retry, meter: UsageMeter::new() }
    }

    pub fn meter(&self) -> &UsageMeter {
        &self.meter
    }

    pub fn backend_name(&self) -> &'static str {
        self.backend.name()
    }

    pub fn complete(&self, request: &ChatRequest) -> Result<ChatResponse, GatewayError> {
        request.validate()?;
        let mut attempt = 0u32;
        let mut response = loop {
            attempt += 1;
            match self.backend.send(request) {
                Ok(r) => break r,
                Err(e) if e.is_retryable() && attempt < self.retry.max_attempts => {
                    let delay = self.retry.delay_before_attempt(attempt + 1);
                    log::warn!(
                        "attempt {attempt}/{} failed ({e}); retrying in {delay:?}",
                        self.retry.max_attempts
                    );
                    std::thread::sleep(delay);
                }
                Err(e) => return Err(e),
            }
        };
        if response.content.trim().is_empty() {
            return Err(GatewayError::EmptyCompletion);
        }
        response.attempts = attempt;
        self.meter.record(&response);
        Ok(response)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Mutex;

    struct FlakyBackend {
        failures_before_success: Mutex<u32>,
        hits: AtomicU64,
    }

    impl Backend for FlakyBackend {
        fn send(&self, _request: &ChatRequest) -> Result<ChatResponse, GatewayError> {
            self.hits.fetch_add(1, Ordering::Relaxed);
            let mut left = self.failures_before_success.lock().unwrap();
            if *left > 0 {
                *left -= 1;
                return Err(GatewayError::Transport("rate limited (429)".into()));
            }
            Ok(ChatResponse {
                content: "ok".into(),
                prompt_tokens: 4,
                completion_tokens: 2,
                latency_secs: 0.01,
                attempts: 1,
            })
        }

        fn name(&self) -> &'static str {
            "flaky"
        }
    }

    fn request() -> ChatRequest {
        ChatRequest::new("test-model", vec![ChatMessage::user("hello")])
    }

    #[test]
    fn retries_transient_failures_then_succeeds() {
        let backend = FlakyBackend {
            failures_before_success: Mutex::new(2),
            hits: AtomicU64::new(0),
        };
        let gateway = Gateway::new(Box::new(backend), RetryPolicy::immediate(3));
        let r = gateway.complete(&request()).unwrap();
        assert_eq!(r.attempts, 3);
        let snap = gateway.meter().snapshot();
        assert_eq!(snap.requests, 1); // one logical request
        assert_eq!(snap.tokens, 6);
    }

    #[test]
    fn gives_up_after_attempt_cap() {
        let backend = FlakyBackend {
            failures_before_success: Mutex::new(10),
            hits: AtomicU64::new(0),
        };
        let gateway = Gateway::new(Box::new(backend), RetryPolicy::immediate(3));
        let err = gateway.complete(&request()).unwrap_err();
        assert!(matches!(err, GatewayError::Transport(_)));
        assert_eq!(gateway.meter().snapshot().requests, 0);
    }

    #[test]
    fn provider_errors_do_not_retry() {
        use std::sync::Arc;
        struct Rejecting(Arc<AtomicU64>);
        impl Backend for Rejecting {
            fn send(&self, _r: &ChatRequest) -> Result<ChatResponse, GatewayError> {
                self.0.fetch_add(1, Ordering::Relaxed);
                Err(GatewayError::Provider { status: 400, message: "bad".into() })
            }
            fn name(&self) -> &'static str {
                "rejecting"
            }
        }
        let hits = Arc::new(AtomicU64::new(0));
        let gateway = Gateway::new(
            Box::new(Rejecting(hits.clone())),
            RetryPolicy::immediate(5),
        );
        let err = gateway.complete(&request()).unwrap_err();
        assert!(matches!(err, GatewayError::Provider { status: 400, .. }));
        assert_eq!(hits.load(Ordering::Relaxed), 1); // exactly one transport attempt
    }

    #[test]
    fn empty_completion_rejected() {
        struct Blank;
        impl Backend for Blank {
            fn send(&self, _r: &ChatRequest) -> Result<ChatResponse, GatewayError> {
                Ok(ChatResponse {
                    content: "   ".into(),
                    prompt_tokens: 1,
                    completion_tokens: 0,
                    latency_secs: 0.0,
                    attempts: 1,
                })
            }
            fn name(&self) -> &'static str {
                "blank"
            }
        }
        let gateway = Gateway::new(Box::new(Blank), RetryPolicy::immediate(1));
        assert_eq!(gateway.complete(&request()), Err(GatewayError::EmptyCompletion));
        assert_eq!(gateway.meter().snapshot().requests, 0);
    }

    #[test]
    fn request_validation() {
        let empty = ChatRequest::new("m", vec![]);
        assert!(matches!(empty.validate(), Err(GatewayError::InvalidRequest(_))));
        let blank_user = ChatRequest::new("m", vec![ChatMessage::user(" ")]);
        assert!(blank_user.validate().is_err());
    }

    #[test]
    fn backoff_delays_non_decreasing() {
        let policy = RetryPolicy::default();
        let mut prev = Duration::ZERO;
        for attempt in 2..=6 {
            let d = policy.delay_before_attempt(attempt);
            assert!(d >= prev);
            prev = d;
        }
        assert_eq!(policy.delay_before_attempt(2), Duration::from_millis(1000));
        assert_eq!(policy.delay_before_attempt(3), Duration::from_millis(2000));
        assert_eq!(policy.delay_before_attempt(4), Duration::from_millis(4000));
    }

    #[test]
    fn meter_accumulates_monotonically() {
        let meter = UsageMeter::new();
        let r = ChatResponse {
            content: "x".into(),
            prompt_tokens: 10,
            completion_tokens: 20,
            latency_secs: 0.5,
            attempts: 1,
        };
        meter.record(&r);
        meter.record(&r);
        let snap = meter.snapshot();
        assert_eq!(snap.requests, 2);
        assert_eq!(snap.tokens, 60);
        assert!((snap.wall_time_secs - 1.0).abs() < 1e-6);
    }
}
