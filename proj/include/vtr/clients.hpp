#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vtr/encoders.hpp"

namespace vtr {

// External model clients used by the data pipeline. Mock implementations are
// deterministic functions of (input, world seed); remote implementations
// speak a line-delimited JSON request/response protocol over an HTTP POST
// boundary with bounded retries and a per-call timeout.

class ClientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlignmentScorer {
 public:
  virtual ~AlignmentScorer() = default;
  virtual double score_frame(std::span<const double> frame_embedding,
                             const std::string& text) = 0;
};

class Captioner {
 public:
  virtual ~Captioner() = default;
  virtual std::string caption(std::span<const double> frame_embedding) = 0;
};

struct PromptTemplate {
  std::string name;     // "long" | "short"
  std::string version;  // versioned asset id
  std::string text;     // named slots {raw_text} and {captions}
};

const PromptTemplate& long_template_v1();
const PromptTemplate& short_template_v1();

// Deterministic prompt construction: raw text and the captions fill the
// template's slots in fixed order.
std::string render_prompt(const PromptTemplate& tpl, const std::string& raw_text,
                          const std::vector<std::string>& captions);

class Rewriter {
 public:
  virtual ~Rewriter() = default;
  virtual std::string rewrite(const PromptTemplate& tpl, const std::string& raw_text,
                              const std::vector<std::string>& captions) = 0;
};

struct ClientSuite {
  std::shared_ptr<AlignmentScorer> scorer;
  std::shared_ptr<Captioner> captioner;
  std::shared_ptr<Rewriter> rewriter;
};

// Mocks share the toy world: the scorer is cosine alignment between the
// frame's text-space content and the encoded text, the captioner verbalizes
// that content with vocabulary words.
ClientSuite make_mock_clients(std::shared_ptr<const ToyWorld> world);

// --- remote boundary ----------------------------------------------------------

class LineTransport {
 public:
  virtual ~LineTransport() = default;
  // One request line out, one response line back; throws ClientError on
  // transport failure.
  virtual std::string round_trip(const std::string& request_line) = 0;
};

struct RetryPolicy {
  int max_retries = 3;
  double timeout_seconds = 30.0;
};

// POSTs each line to base_url + "/v1/call".
std::shared_ptr<LineTransport> make_http_transport(const std::string& host, int port,
                                                   const RetryPolicy& policy);

// Clients over a transport; retries transient failures up to the policy's
// budget before giving up.
ClientSuite make_remote_clients(std::shared_ptr<LineTransport> transport,
                                const RetryPolicy& policy);

// Runs fn, retrying on ClientError up to max_retries extra attempts.
std::string call_with_retries(const std::function<std::string()>& fn, int max_retries,
                              const std::string& what);

}  // namespace vtr
