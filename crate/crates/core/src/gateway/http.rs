//! Live wire adapters. Two JSON shapes behind one trait: a
//! chat-completions-style protocol and a generateContent-style protocol.
//! Base URL, path, and model name are configuration, so any compatible
//! endpoint works.

use std::time::{Duration, Instant};

use serde::Deserialize;
use serde_json::json;

use super::{Backend, ChatRequest, ChatResponse, ChatRole, GatewayError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WireProtocol {
    /// `POST {base}/chat/completions` with `messages` / `usage`.
    OpenAiChat,
    /// `POST {base}/models/{model}:generateContent` with `contents` /
    /// `usageMetadata`.
    GeminiGenerate,
}

pub struct HttpBackend {
    client: reqwest::blocking::Client,
    protocol: WireProtocol,
    base_url: String,
    api_key: Option<String>,
}

impl HttpBackend {
    pub fn new(
        protocol: WireProtocol,
        base_url: impl Into<String>,
        api_key: Option<String>,
        timeout: Duration,
    ) -> Result<Self, GatewayError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| GatewayError::Transport(e.to_string()))?;
        Ok(Self {
            client,
            protocol,
            base_url: base_url.into().trim_end_matches('/').to_string(),
            api_key: api_key.filter(|k| !k.trim().is_empty()),
        })
    }

    fn key(&self) -> Result<&str, GatewayError> {
        self.api_key.as_deref().ok_or_else(|| {
            GatewayError::Auth("no API key configured (set LLM_API_KEY or config api_key)".into())
        })
    }
}

fn classify_status(status: u16, body: &str) -> GatewayError {
    let message = body.chars().take(300).collect::<String>();
    match status {
        401 | 403 => GatewayError::Auth(format!("status {status}: {message}")),
        429 | 500..=599 => GatewayError::Transport(format!("status {status}: {message}")),
        _ => GatewayError::Provider { status, message },
    }
}

#[derive(Deserialize)]
struct OpenAiResponse {
    choices: Vec<OpenAiChoice>,
    #[serde(default)]
    usage: Option<OpenAiUsage>,
}

#[derive(Deserialize)]
struct OpenAiChoice {
    message: OpenAiMessage,
}

#[derive(Deserialize)]
struct OpenAiMessage {
    #[serde(default)]
    content: Option<String>,
}

#[derive(Deserialize, Default)]
struct OpenAiUsage {
    #[serde(default)]
    prompt_tokens: u64,
    #[serde(default)]
    completion_tokens: u64,
}

#[derive(Deserialize)]
struct GeminiResponse {
    #[serde(default)]
    candidates: Vec<GeminiCandidate>,
    #[serde(default, rename = "usageMetadata")]
    usage_metadata: Option<GeminiUsage>,
}

#[derive(Deserialize)]
struct GeminiCandidate {
    content: GeminiContent,
}

#[derive(Deserialize)]
struct GeminiContent {
    #[serde(default)]
    parts: Vec<GeminiPart>,
}

#[derive(Deserialize)]
struct GeminiPart {
    #[serde(default)]
    text: String,
}

#[derive(Deserialize, Default)]
struct GeminiUsage {
    #[serde(default, rename = "promptTokenCount")]
    prompt_tokens: u64,
    #[serde(default, rename = "candidatesTokenCount")]
    completion_tokens: u64,
}

impl Backend for HttpBackend {
    fn send(&self, request: &ChatRequest) -> Result<ChatResponse, GatewayError> {
        let key = self.key()?; // fail before any network traffic
        let started = Instant::now();

        let http_response = match self.protocol {
            WireProtocol::OpenAiChat => {
                let mut body = json!({
                    "model": request.model_id,
                    "messages": request.messages.iter().map(|m| json!({
                        "role": match m.role {
                            ChatRole::System => "system",
                            ChatRole::User => "user",
                            ChatRole::Assistant => "assistant",
                        },
                        "content": m.content,
                    })).collect::<Vec<_>>(),
                });
                if let Some(t) = request.temperature {
                    body["temperature"] = json!(t);
                }
                if let Some(p) = request.top_p {
                    body["top_p"] = json!(p);
                }
                self.client
                    .post(format!("{}/chat/completions", self.base_url))
                    .bearer_auth(key)
                    .json(&body)
                    .send()
            }
            WireProtocol::GeminiGenerate => {
                // system messages ride in systemInstruction, the rest as contents
                let system_text: Vec<&str> = request
                    .messages
                    .iter()
                    .filter(|m| m.role == ChatRole::System)
                    .map(|m| m.content.as_str())
                    .collect();
                let contents: Vec<_> = request
                    .messages
                    .iter()
                    .filter(|m| m.role != ChatRole::System)
                    .map(|m| {
                        json!({
                            "role": if m.role == ChatRole::Assistant { "model" } else { "user" },
                            "parts": [{"text": m.content}],
                        })
                    })
                    .collect();
                let mut body = json!({ "contents": contents });
                if !system_text.is_empty() {
                    body["systemInstruction"] =
                        json!({"parts": [{"text": system_text.join("\n\n")}]});
                }
                let mut config = serde_json::Map::new();
                if let Some(t) = request.temperature {
                    config.insert("temperature".into(), json!(t));
                }
                if let Some(p) = request.top_p {
                    config.insert("topP".into(), json!(p));
                }
                if !config.is_empty() {
                    body["generationConfig"] = serde_json::Value::Object(config);
                }
                self.client
                    .post(format!(
                        "{}/models/{}:generateContent",
                        self.base_url, request.model_id
                    ))
                    .header("x-goog-api-key", key)
                    .json(&body)
                    .send()
            }
        };

        let response = http_response.map_err(|e| GatewayError::Transport(e.to_string()))?;
        let status = response.status().as_u16();
        let text = response
            .text()
            .map_err(|e| GatewayError::Transport(e.to_string()))?;
        if !(200..300).contains(&status) {
            return Err(classify_status(status, &text));
        }

        let latency_secs = started.elapsed().as_secs_f64();
        let (content, prompt_tokens, completion_tokens) = match self.protocol {
            WireProtocol::OpenAiChat => {
                let parsed: OpenAiResponse = serde_json::from_str(&text).map_err(|e| {
                    GatewayError::Provider { status, message: format!("unparsable body: {e}") }
                })?;
                let content = parsed
                    .choices
                    .first()
                    .and_then(|c| c.message.content.clone())
                    .unwrap_or_default();
                let usage = parsed.usage.unwrap_or_default();
                (content, usage.prompt_tokens, usage.completion_tokens)
            }
            WireProtocol::GeminiGenerate => {
                let parsed: GeminiResponse = serde_json::from_str(&text).map_err(|e| {
                    GatewayError::Provider { status, message: format!("unparsable body: {e}") }
                })?;
                let content = parsed
                    .candidates
                    .first()
                    .map(|c| {
                        c.content
                            .parts
                            .iter()
                            .map(|p| p.text.as_str())
                            .collect::<Vec<_>>()
                            .join("")
                    })
                    .unwrap_or_default();
                let usage = parsed.usage_metadata.unwrap_or_default();
                (content, usage.prompt_tokens, usage.completion_tokens)
            }
        };

        if content.trim().is_empty() {
            return Err(GatewayError::EmptyCompletion);
        }
        Ok(ChatResponse {
            content,
            prompt_tokens,
            completion_tokens,
            latency_secs,
            attempts: 1,
        })
    }

    fn name(&self) -> &'static str {
        match self.protocol {
            WireProtocol::OpenAiChat => "openai-chat",
            WireProtocol::GeminiGenerate => "gemini-generate",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gateway::ChatMessage;

    #[test]
    fn missing_credential_fails_before_network() {
        // unroutable base URL: reaching the network would hang or error
        // differently, so an Auth error proves the early check fired
        let backend = HttpBackend::new(
            WireProtocol::OpenAiChat,
            "http://192.0.2.1:1/v1",
            None,
            Duration::from_millis(50),
        )
        .unwrap();
        let req = ChatRequest::new("m", vec![ChatMessage::user("hi")]);
        assert!(matches!(backend.send(&req), Err(GatewayError::Auth(_))));
    }

    #[test]
    fn blank_credential_counts_as_missing() {
        let backend = HttpBackend::new(
            WireProtocol::GeminiGenerate,
            "http://192.0.2.1:1",
            Some("  ".into()),
            Duration::from_millis(50),
        )
        .unwrap();
        let req = ChatRequest::new("m", vec![ChatMessage::user("hi")]);
        assert!(matches!(backend.send(&req), Err(GatewayError::Auth(_))));
    }

    #[test]
    fn status_classification() {
        assert!(matches!(classify_status(401, ""), GatewayError::Auth(_)));
        assert!(matches!(classify_status(403, ""), GatewayError::Auth(_)));
        assert!(classify_status(429, "").is_retryable());
        assert!(classify_status(503, "").is_retryable());
        assert!(matches!(
            classify_status(404, "nope"),
            GatewayError::Provider { status: 404, .. }
        ));
    }
}
