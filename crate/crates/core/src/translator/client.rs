use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

/// Default environment variable holding the bearer token.
pub const API_KEY_ENV: &str = "PLAHX_API_KEY";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletionRequest {
    /// Key used by fixture-backed clients.
    #[serde(skip)]
    pub instance_id: Option<String>,
    pub prompt: String,
    pub temperature: f64,
    pub max_tokens: usize,
}

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("transport error: {0}")]
    Transport(String),
    #[error("no fixture for instance `{0}`")]
    MissingFixture(String),
    #[error("mock client needs an instance id")]
    MissingInstanceId,
    #[error("unexpected response: {0}")]
    BadResponse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A chat-completion backend.
pub trait ChatClient: Send + Sync {
    fn complete(&self, request: &CompletionRequest) -> Result<String, ClientError>;
}

/// Offline client returning canned completions keyed by instance id.
#[derive(Debug, Clone)]
pub enum MockClient {
    /// Reads `<dir>/<instance-id>.completion.txt`.
    Dir(PathBuf),
    Memory(HashMap<String, String>),
}

impl MockClient {
    pub fn from_dir(dir: impl Into<PathBuf>) -> Self {
        MockClient::Dir(dir.into())
    }

    pub fn fixture_path(dir: &Path, instance_id: &str) -> PathBuf {
        dir.join(format!("{instance_id}.completion.txt"))
    }
}

impl ChatClient for MockClient {
    fn complete(&self, request: &CompletionRequest) -> Result<String, ClientError> {
        let id = request
            .instance_id
            .as_deref()
            .ok_or(ClientError::MissingInstanceId)?;
        match self {
            MockClient::Dir(dir) => {
                let path = MockClient::fixture_path(dir, id);
                std::fs::read_to_string(&path).map_err(|e| match e.kind() {
                    std::io::ErrorKind::NotFound => ClientError::MissingFixture(id.to_string()),
                    _ => ClientError::Io(e),
                })
            }
            MockClient::Memory(map) => map
                .get(id)
                .cloned()
                .ok_or_else(|| ClientError::MissingFixture(id.to_string())),
        }
    }
}

/// OpenAI-style chat-completion endpoint.
#[derive(Debug, Clone)]
pub struct HttpChatClient {
    pub url: String,
    pub model: Option<String>,
    /// Environment variable read for the bearer token; unset means no header.
    pub api_key_env: String,
    pub timeout: Duration,
}

impl HttpChatClient {
    pub fn new(url: impl Into<String>) -> Self {
        HttpChatClient {
            url: url.into(),
            model: None,
            api_key_env: API_KEY_ENV.to_string(),
            timeout: Duration::from_secs(120),
        }
    }

    fn body(&self, request: &CompletionRequest) -> Value {
        let mut body = serde_json::json!({
            "messages": [{ "role": "user", "content": request.prompt }],
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        });
        if let Some(model) = &self.model {
            body["model"] = Value::String(model.clone());
        }
        body
    }
}

/// First text segment of a chat or plain completion response.
pub fn completion_text(body: &Value) -> Option<String> {
    let choice = body.get("choices")?.get(0)?;
    choice
        .pointer("/message/content")
        .or_else(|| choice.get("text"))
        .and_then(Value::as_str)
        .map(str::to_string)
}

impl ChatClient for HttpChatClient {
    fn complete(&self, request: &CompletionRequest) -> Result<String, ClientError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(self.timeout)
            .build()
            .map_err(|e| ClientError::Transport(e.to_string()))?;
        let mut call = client.post(&self.url).json(&self.body(request));
        if let Ok(token) = std::env::var(&self.api_key_env) {
            call = call.bearer_auth(token);
        }
        let response = call
            .send()
            .map_err(|e| ClientError::Transport(e.to_string()))?;
        let status = response.status();
        if !status.is_success() {
            return Err(ClientError::Transport(format!("HTTP {status}")));
        }
        let body: Value = response
            .json()
            .map_err(|e| ClientError::BadResponse(e.to_string()))?;
        completion_text(&body).ok_or_else(|| ClientError::BadResponse("no completion text".into()))
    }
}

/// Calls `client`, retrying failed attempts `retries` times after `backoff`.
pub fn complete_with_retry(
    client: &dyn ChatClient,
    request: &CompletionRequest,
    retries: usize,
    backoff: Duration,
) -> Result<String, ClientError> {
    let mut attempt = 0;
    loop {
        match client.complete(request) {
            Ok(text) => return Ok(text),
            Err(err) if attempt >= retries => return Err(err),
            Err(_) => {
                attempt += 1;
                std::thread::sleep(backoff);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    struct Flaky {
        failures: usize,
        calls: AtomicUsize,
    }

    impl ChatClient for Flaky {
        fn complete(&self, _: &CompletionRequest) -> Result<String, ClientError> {
            let n = self.calls.fetch_add(1, Ordering::SeqCst);
            if n < self.failures {
                Err(ClientError::Transport("down".into()))
            } else {
                Ok("ok".into())
            }
        }
    }

    fn request(id: &str) -> CompletionRequest {
        CompletionRequest {
            instance_id: Some(id.into()),
            prompt: "p".into(),
            temperature: 0.0,
            max_tokens: 10,
        }
    }

    #[test]
    fn retries_twice_then_surfaces() {
        let ok = Flaky {
            failures: 2,
            calls: AtomicUsize::new(0),
        };
        assert_eq!(
            complete_with_retry(&ok, &request("a"), 2, Duration::ZERO).unwrap(),
            "ok"
        );
        assert_eq!(ok.calls.load(Ordering::SeqCst), 3);
        let down = Flaky {
            failures: 3,
            calls: AtomicUsize::new(0),
        };
        assert!(complete_with_retry(&down, &request("a"), 2, Duration::ZERO).is_err());
        assert_eq!(down.calls.load(Ordering::SeqCst), 3);
    }

    #[test]
    fn mock_reads_fixture_dir() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(MockClient::fixture_path(dir.path(), "blocks-0001"), "text").unwrap();
        let mock = MockClient::from_dir(dir.path());
        assert_eq!(mock.complete(&request("blocks-0001")).unwrap(), "text");
        assert!(matches!(
            mock.complete(&request("nope")),
            Err(ClientError::MissingFixture(_))
        ));
        let mut anon = request("x");
        anon.instance_id = None;
        assert!(matches!(
            mock.complete(&anon),
            Err(ClientError::MissingInstanceId)
        ));
    }

    #[test]
    fn response_shapes() {
        let chat = serde_json::json!({"choices": [{"message": {"content": "abc"}}]});
        let plain = serde_json::json!({"choices": [{"text": "xyz"}]});
        assert_eq!(completion_text(&chat).as_deref(), Some("abc"));
        assert_eq!(completion_text(&plain).as_deref(), Some("xyz"));
        assert_eq!(completion_text(&serde_json::json!({})), None);
    }

    #[test]
    fn request_body_carries_sampling_fields() {
        let mut c = HttpChatClient::new("http://localhost:1/v1/chat/completions");
        c.model = Some("m".into());
        let body = c.body(&request("a"));
        assert_eq!(body["temperature"], 0.0);
        assert_eq!(body["max_tokens"], 10);
        assert_eq!(body["model"], "m");
        assert_eq!(body["messages"][0]["content"], "p");
    }
}
