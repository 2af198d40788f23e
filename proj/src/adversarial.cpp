#include "veriscale/adversarial.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "veriscale/classifier.hpp"
#include "veriscale/errors.hpp"
#include "veriscale/json_io.hpp"
#include "veriscale/lean_text.hpp"

namespace veriscale {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

bool is_fence(const std::string& line) { return trim(line).rfind("```", 0) == 0; }

// Lines between markers, fences stripped, trimmed as a block.
std::string slice_block(const std::vector<std::string>& lines, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (is_fence(lines[i])) continue;
    out += lines[i];
    out += '\n';
  }
  return trim(out);
}

std::string signature_of_def(const std::string& def_source, const std::string& rename) {
  DefHeader h = parse_def_header(def_source);
  return "def " + rename + " " + h.raw_params + " : " + h.return_type;
}

constexpr const char* kPrecondMarker = "-- Precondition Implementation";
constexpr const char* kPostcondMarker = "-- Postcondition Implementation";
constexpr const char* kAdversarialMarker = "-- Adversarial Implementation";

}  // namespace

Decomposition parse_decomposition(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  std::size_t input_at = lines.size();
  std::size_t output_at = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string t = trim(lines[i]);
    if (input_at == lines.size() && t.rfind("Input:", 0) == 0) input_at = i;
    else if (input_at != lines.size() && output_at == lines.size() && t.rfind("Output:", 0) == 0)
      output_at = i;
  }
  if (input_at == lines.size())
    throw MissingSlot("decomposition response has no 'Input:' section");
  if (output_at == lines.size())
    throw MissingSlot("decomposition response has no 'Output:' section");
  Decomposition d;
  d.input_section = slice_block(lines, input_at + 1, output_at);
  d.output_section = slice_block(lines, output_at + 1, lines.size());
  if (d.input_section.empty()) throw MissingSlot("decomposition 'Input:' section is empty");
  if (d.output_section.empty()) throw MissingSlot("decomposition 'Output:' section is empty");
  return d;
}

const char* impl_origin_name(ImplOrigin o) {
  switch (o) {
    case ImplOrigin::RedTeam: return "red_team";
    case ImplOrigin::FallbackDrop: return "fallback_drop";
  }
  return "red_team";
}

std::string provenance_to_jsonl(std::span<const HarvestRecord> records) {
  std::string out;
  for (const HarvestRecord& r : records) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["origin"] = r.origin;
    row["source_spec"] = r.source_spec;
    row["source_text"] = r.source_text;
    out += row.dump();
    out += '\n';
  }
  return out;
}

PromptPair render_decomposition_prompt(const Task& task) {
  PromptPair p;
  p.user = render_template(prompts::decomposition_template(),
                           {{"problem_description", task.description}});
  return p;
}

PromptPair render_spec_prompt(const Task& task, const Decomposition& decomp, int candidate_index) {
  if (task.precond_text.empty() || task.postcond_text.empty())
    throw MissingPrecondText("task " + task.id + " carries no specification source text");
  std::string suffix = "_cand" + std::to_string(candidate_index);
  PromptPair p;
  p.user = render_template(
      prompts::spec_template(),
      {{"problem_description", task.description},
       {"input", decomp.input_section},
       {"output", decomp.output_section},
       {"precond_signature", signature_of_def(task.precond_text, task.precond_ref + suffix)},
       {"postcond_signature", signature_of_def(task.postcond_text, task.postcond_ref + suffix)}});
  return p;
}

PromptPair render_adversarial_prompt(const Task& task, const std::string& precond_source,
                                     const std::string& postcond_source) {
  if (task.impl_signature.empty())
    throw MissingSlot("task " + task.id + " carries no implementation signature");
  PromptPair p;
  p.user = render_template(prompts::adversarial_template(),
                           {{"problem_description", task.description},
                            {"pre_condition", precond_source},
                            {"post_condition", postcond_source},
                            {"impl_signature", task.impl_signature}});
  return p;
}

SpecSources parse_spec_response(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  std::size_t pre_at = lines.size();
  std::size_t post_at = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string t = trim(lines[i]);
    if (t.rfind(kPrecondMarker, 0) == 0 && pre_at == lines.size()) pre_at = i;
    if (t.rfind(kPostcondMarker, 0) == 0 && post_at == lines.size()) post_at = i;
  }
  if (pre_at == lines.size())
    throw SyntaxError(std::string("specification response lacks the '") + kPrecondMarker +
                      "' marker");
  if (post_at == lines.size())
    throw SyntaxError(std::string("specification response lacks the '") + kPostcondMarker +
                      "' marker");
  if (post_at < pre_at)
    throw SyntaxError("specification response orders its markers backwards");
  SpecSources out;
  out.precond_source = slice_block(lines, pre_at + 1, post_at);
  out.postcond_source = slice_block(lines, post_at + 1, lines.size());
  if (out.precond_source.empty()) throw SyntaxError("empty precondition block");
  if (out.postcond_source.empty()) throw SyntaxError("empty postcondition block");
  return out;
}

std::vector<std::string> parse_adversarial_response(const std::string& text, int max_blocks) {
  std::vector<std::string> lines = split_lines(text);
  std::vector<std::size_t> marker_at;
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (trim(lines[i]).rfind(kAdversarialMarker, 0) == 0) marker_at.push_back(i);
  if (marker_at.empty())
    throw NoBlocksFound("response carries no adversarial implementation blocks");
  std::vector<std::string> blocks;
  for (std::size_t m = 0; m < marker_at.size(); ++m) {
    if (max_blocks >= 0 && blocks.size() >= static_cast<std::size_t>(max_blocks)) break;
    std::size_t from = marker_at[m] + 1;
    std::size_t to = m + 1 < marker_at.size() ? marker_at[m + 1] : lines.size();
    std::string block = slice_block(lines, from, to);
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  if (blocks.empty())
    throw NoBlocksFound("every adversarial implementation block was empty");
  return blocks;
}

std::vector<std::string> fallback_drop_constraints(const std::string& def_source) {
  DefHeader header = parse_def_header(def_source);
  std::vector<std::string> clauses = split_top_level_conjuncts(header.body);
  if (clauses.size() < 2)
    throw NotConjunctive("definition " + header.name +
                         " has a single clause; nothing to drop");
  std::vector<std::string> weakened;
  for (std::size_t drop = 0; drop < clauses.size(); ++drop) {
    std::string body;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      if (i == drop) continue;
      if (!body.empty()) body += " \xe2\x88\xa7 ";
      body += trim(clauses[i]);
    }
    weakened.push_back(render_def(header.name + "_drop" + std::to_string(drop + 1),
                                  header.raw_params, header.return_type, body));
  }
  return weakened;
}

HarvestResult harvest_unexpected_outputs(Executor& executor, VerifierBackend& backend,
                                         const Task& task, std::span<const CandidateSpec> specs,
                                         std::span<const AdversarialImpl> impls,
                                         std::span<const IoPair> expected_pairs,
                                         const AdversarialConfig& cfg) {
  HarvestResult result;
  std::set<std::string> seen;
  for (const AdversarialImpl& impl : impls) {
    const CandidateSpec& spec = specs[impl.spec_index];
    for (const IoPair& pair : expected_pairs) {
      RunOutcome run = executor.run(impl.ref, pair.input, cfg.run_timeout_ms);
      if (run.status != RunStatus::Value || !run.value.has_value()) continue;
      if (*run.value == pair.output) continue;
      // The wrong output must still slip through the spec that bred the
      // implementation; otherwise it is noise, not a demonstrated loophole.
      std::string expr =
          render_application(spec.postcond_name, task.signature, pair.input, *run.value);
      PropProbe probe = decide_prop(backend, expr, spec.postcond_name, cfg.probe_timeout_ms);
      if (probe.decision != Decision::Holds) continue;
      std::string key = canonical_key(pair.input) + '\x1f' +
                        render_value(*run.value, RenderStyle::Json);
      if (!seen.insert(key).second) continue;
      result.unexpected_outputs.push_back({pair.input, *run.value});
      result.provenance.push_back({task.id + "#" + std::to_string(seen.size() - 1),
                                   impl_origin_name(impl.origin), spec.postcond_name,
                                   impl.source});
    }
  }
  return result;
}

namespace {

// Registers the response's blocks, keeping those that compile.
void accept_blocks(const std::string& response, const Task& task, std::size_t spec_index,
                   const std::string& ref_scope, ImplOrigin origin, ImplRegistry& registry,
                   const AdversarialConfig& cfg, std::vector<AdversarialImpl>& impls,
                   std::vector<std::string>& log) {
  std::vector<std::string> blocks;
  try {
    blocks = parse_adversarial_response(response, cfg.max_adver_impl);
  } catch (const NoBlocksFound& e) {
    log.push_back("spec " + std::to_string(spec_index) + ": " + e.what());
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::string ref = "adv::" + task.id + "::" + ref_scope + "::b" + std::to_string(b + 1);
    ProbeOutcome compiled = registry.register_impl(ref, blocks[b]);
    if (compiled.status != ProbeStatus::Pass) {
      log.push_back(ref + ": dropped (" + compiled.detail + ")");
      continue;
    }
    std::string name;
    try {
      name = parse_def_header(blocks[b]).name;
    } catch (const SyntaxError&) {
      name = ref;
    }
    impls.push_back({ref, name, blocks[b], spec_index, origin});
  }
}

}  // namespace

AdversarialResult run_adversarial_stage(const Task& task, LlmClient& client,
                                        VerifierBackend& backend, ImplRegistry& registry,
                                        Executor& executor,
                                        std::span<const IoPair> expected_pairs,
                                        const AdversarialConfig& cfg) {
  AdversarialResult result;

  PromptPair decomp_prompt = render_decomposition_prompt(task);
  std::string decomp_text =
      client.complete(decomp_prompt.system.value_or(""), decomp_prompt.user);
  Decomposition decomp = parse_decomposition(decomp_text);

  for (int k = 1; k <= cfg.spec_profiles; ++k) {
    PromptPair spec_prompt = render_spec_prompt(task, decomp, k);
    std::string spec_text = client.complete(spec_prompt.system.value_or(""), spec_prompt.user);
    CandidateSpec spec;
    try {
      SpecSources sources = parse_spec_response(spec_text);
      spec.precond_source = sources.precond_source;
      spec.postcond_source = sources.postcond_source;
      spec.precond_name = parse_def_header(spec.precond_source).name;
      spec.postcond_name = parse_def_header(spec.postcond_source).name;
    } catch (const SyntaxError& e) {
      result.log.push_back("spec candidate " + std::to_string(k) + ": " + e.what());
      continue;
    }
    ProbeOutcome pre_ok = backend.check_syntax(spec.precond_source);
    ProbeOutcome post_ok = backend.check_syntax(spec.postcond_source);
    spec.usable = pre_ok.status == ProbeStatus::Pass && post_ok.status == ProbeStatus::Pass;
    if (!spec.usable) {
      result.log.push_back("spec candidate " + std::to_string(k) + ": rejected (" +
                           (pre_ok.status != ProbeStatus::Pass ? pre_ok.detail : post_ok.detail) +
                           ")");
    }
    result.specs.push_back(std::move(spec));
  }

  for (std::size_t s = 0; s < result.specs.size(); ++s) {
    const CandidateSpec& spec = result.specs[s];
    if (!spec.usable) continue;
    PromptPair attack = render_adversarial_prompt(task, spec.precond_source, spec.postcond_source);
    std::string response = client.complete(attack.system.value_or(""), attack.user);
    accept_blocks(response, task, s, "s" + std::to_string(s + 1), ImplOrigin::RedTeam, registry,
                  cfg, result.impls, result.log);
  }

  if (result.impls.empty()) {
    // No compiled attacker: weaken the ground-truth postcondition by
    // dropping one conjunct at a time and re-attack each weakened contract.
    result.log.push_back("no adversarial implementation compiled; dropping constraints");
    std::vector<std::string> weakened;
    try {
      weakened = fallback_drop_constraints(task.postcond_text);
    } catch (const NotConjunctive& e) {
      result.log.push_back(std::string("fallback unavailable: ") + e.what());
      weakened.clear();
    }
    for (std::size_t i = 0; i < weakened.size(); ++i) {
      ProbeOutcome ok = backend.check_syntax(weakened[i]);
      if (ok.status != ProbeStatus::Pass) {
        result.log.push_back("weakened variant " + std::to_string(i + 1) + ": rejected (" +
                             ok.detail + ")");
        continue;
      }
      CandidateSpec spec;
      spec.precond_source = task.precond_text;
      spec.postcond_source = weakened[i];
      spec.precond_name = task.precond_ref;
      spec.postcond_name = parse_def_header(weakened[i]).name;
      spec.from_fallback = true;
      spec.usable = true;
      result.specs.push_back(std::move(spec));
      std::size_t spec_index = result.specs.size() - 1;

      PromptPair attack = render_adversarial_prompt(task, task.precond_text, weakened[i]);
      std::string response = client.complete(attack.system.value_or(""), attack.user);
      accept_blocks(response, task, spec_index, "d" + std::to_string(i + 1),
                    ImplOrigin::FallbackDrop, registry, cfg, result.impls, result.log);
    }
  }

  HarvestResult harvest = harvest_unexpected_outputs(executor, backend, task, result.specs,
                                                     result.impls, expected_pairs, cfg);
  result.unexpected_outputs = std::move(harvest.unexpected_outputs);
  result.provenance = std::move(harvest.provenance);
  return result;
}

}  // namespace veriscale
