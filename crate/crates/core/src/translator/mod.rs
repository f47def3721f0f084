//! Natural-language instruction to symbolic abstraction: few-shot prompt,
//! chat completion, strict parsing and domain validation.

mod abstraction;
mod client;
mod drift;
mod prompt;
mod tokens;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use abstraction::{embed_into_problem, Abstraction, AbstractionError};
pub use client::{
    complete_with_retry, completion_text, ChatClient, ClientError, CompletionRequest,
    HttpChatClient, MockClient, API_KEY_ENV,
};
pub use drift::{measure_drift, DriftReport, DRIFT_THRESHOLD};
pub use prompt::{build_prompt, PromptBundle, PromptError, Shot, PROMPT_HEADER};
pub use tokens::{check_overflow, count_tokens, ByteApprox, Tokenizer};

use crate::pddl::{serialize, Domain};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslatorConfig {
    pub context_limit: usize,
    pub temperature: f64,
    pub shot_count: usize,
    pub retries: usize,
    pub backoff: Duration,
}

impl Default for TranslatorConfig {
    fn default() -> Self {
        TranslatorConfig {
            context_limit: 5000,
            temperature: 0.0,
            shot_count: 6,
            retries: 2,
            backoff: Duration::from_millis(500),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "detail", rename_all = "kebab-case")]
pub enum TranslationOutcome {
    Success(Abstraction),
    SyntaxError(String),
    SemanticError(String),
    ContextOverflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Translation {
    pub outcome: TranslationOutcome,
    pub prompt_tokens: usize,
    pub completion_tokens: usize,
    pub completion: String,
}

#[derive(Debug, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Client(#[from] ClientError),
    #[error(transparent)]
    Prompt(#[from] PromptError),
}

pub struct Translator<'a> {
    pub domain: &'a Domain,
    pub shots: &'a [Shot],
    pub config: TranslatorConfig,
    pub client: &'a dyn ChatClient,
    pub tokenizer: Box<dyn Tokenizer>,
}

impl<'a> Translator<'a> {
    pub fn new(
        domain: &'a Domain,
        shots: &'a [Shot],
        config: TranslatorConfig,
        client: &'a dyn ChatClient,
    ) -> Self {
        Translator {
            domain,
            shots,
            config,
            client,
            tokenizer: Box::new(ByteApprox),
        }
    }

    pub fn prompt(&self, instruction: &str) -> Result<PromptBundle, PromptError> {
        let k = self.config.shot_count.min(self.shots.len());
        build_prompt(&serialize(self.domain), &self.shots[..k], instruction)
    }

    pub fn translate(
        &self,
        instance_id: Option<&str>,
        instruction: &str,
    ) -> Result<Translation, TranslateError> {
        let prompt = self.prompt(instruction)?.render();
        let prompt_tokens = self.tokenizer.count(&prompt);
        let limit = self.config.context_limit;
        if prompt_tokens > limit {
            return Ok(Translation {
                outcome: TranslationOutcome::ContextOverflow,
                prompt_tokens,
                completion_tokens: 0,
                completion: String::new(),
            });
        }
        let request = CompletionRequest {
            instance_id: instance_id.map(str::to_string),
            prompt,
            temperature: self.config.temperature,
            max_tokens: limit - prompt_tokens,
        };
        let completion = complete_with_retry(
            self.client,
            &request,
            self.config.retries,
            self.config.backoff,
        )?;
        let completion_tokens = self.tokenizer.count(&completion);
        let outcome = if check_overflow(prompt_tokens, completion_tokens, limit) {
            TranslationOutcome::ContextOverflow
        } else {
            classify_completion(&completion, self.domain)
        };
        Ok(Translation {
            outcome,
            prompt_tokens,
            completion_tokens,
            completion,
        })
    }
}

/// Grammar check first, then domain consistency.
pub fn classify_completion(completion: &str, domain: &Domain) -> TranslationOutcome {
    match Abstraction::parse(completion) {
        Err(e) => TranslationOutcome::SyntaxError(e.to_string()),
        Ok(z) => match z.validate(domain) {
            Ok(_) => TranslationOutcome::Success(z),
            Err(e) => TranslationOutcome::SemanticError(e.to_string()),
        },
    }
}
