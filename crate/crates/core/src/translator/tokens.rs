/// Token counter used for prompt accounting.
pub trait Tokenizer: Send + Sync {
    fn count(&self, text: &str) -> usize;
}

/// `ceil(bytes / 4)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ByteApprox;

impl Tokenizer for ByteApprox {
    fn count(&self, text: &str) -> usize {
        text.len().div_ceil(4)
    }
}

pub fn count_tokens(text: &str) -> usize {
    ByteApprox.count(text)
}

/// True when the exchange does not fit into the context window.
pub fn check_overflow(
    prompt_tokens: usize,
    completion_tokens: usize,
    context_limit: usize,
) -> bool {
    prompt_tokens + completion_tokens > context_limit
}
