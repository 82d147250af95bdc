// Copyright 2026 The qiv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qiv/serialize.hpp"

#include <utility>

#include "qiv/scenario.hpp"

namespace qiv {
namespace {

/// Rethrows nlohmann type/parse issues as qiv Parse errors with context.
template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

json complex_to_json(const cplx& z) {
  return json::array({z.real(), z.imag()});
}

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    fail(ErrorCode::Parse, "complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json matrix_to_json(const CMat& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(complex_to_json(m(i, j)));
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

CMat matrix_from_json(const json& j) {
  return guarded("matrix", [&]() -> CMat {
    const auto rows = j.at("rows").get<long>();
    const auto cols = j.at("cols").get<long>();
    if (rows < 1 || cols < 1 || rows > kDimCap || cols > kDimCap) {
      fail(ErrorCode::BadArgument, "matrix dimensions out of range");
    }
    const json& entries = j.at("entries");
    if (!entries.is_array() ||
        entries.size() != static_cast<std::size_t>(rows * cols)) {
      fail(ErrorCode::Parse, "matrix entry count must equal rows*cols");
    }
    CMat m(rows, cols);
    std::size_t index = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        m(r, c) = complex_from_json(entries[index++]);
      }
    }
    if (!all_finite(m)) {
      fail(ErrorCode::NonFinite, "matrix entries must be finite");
    }
    return m;
  });
}

json density_to_json(const DensityMatrix& rho) {
  return json{{"matrix", matrix_to_json(rho.matrix())}};
}

DensityMatrix density_from_json(const json& j) {
  return guarded("density matrix", [&] {
    return DensityMatrix::validate(matrix_from_json(j.at("matrix")));
  });
}

json pure_to_json(const PureState& psi) {
  json amplitudes = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    amplitudes.push_back(complex_to_json(psi.amplitudes()(i)));
  }
  return json{{"amplitudes", amplitudes}};
}

PureState pure_from_json(const json& j) {
  return guarded("pure state", [&] {
    const json& amplitudes = j.at("amplitudes");
    if (!amplitudes.is_array() || amplitudes.empty()) {
      fail(ErrorCode::Parse, "amplitudes must be a nonempty array");
    }
    CVec v(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = complex_from_json(amplitudes[i]);
    }
    return PureState::validate(v);
  });
}

bool state_json_is_pure(const json& j) {
  return j.is_object() && j.contains("amplitudes");
}

DensityMatrix state_from_json(const json& j) {
  if (state_json_is_pure(j)) {
    return pure_from_json(j).to_density();
  }
  if (j.is_object() && j.contains("matrix")) {
    return density_from_json(j);
  }
  fail(ErrorCode::Parse,
       "state must contain either \"amplitudes\" or \"matrix\"");
}

json povm_to_json(const Povm& p) {
  json elements = json::array();
  for (int i = 0; i < p.size(); ++i) {
    elements.push_back(json{{"label", p.label(i)},
                            {"matrix", matrix_to_json(p.element(i))}});
  }
  return json{{"input_dim", p.input_dim()}, {"elements", elements}};
}

Povm povm_from_json(const json& j) {
  return guarded("POVM", [&] {
    const int input_dim = j.at("input_dim").get<int>();
    std::vector<Povm::Element> elements;
    for (const json& e : j.at("elements")) {
      elements.emplace_back(e.at("label").get<std::string>(),
                            matrix_from_json(e.at("matrix")));
    }
    return Povm::validate(input_dim, std::move(elements));
  });
}

json intervention_to_json(const Intervention& k) {
  json outcomes = json::array();
  for (const Outcome& outcome : k.outcomes()) {
    json kraus = json::array();
    for (const CMat& a : outcome.kraus) {
      kraus.push_back(matrix_to_json(a));
    }
    outcomes.push_back(json{{"label", outcome.label},
                            {"output_dim", outcome.output_dim},
                            {"kraus", kraus}});
  }
  return json{{"input_dim", k.input_dim()}, {"outcomes", outcomes}};
}

Intervention intervention_from_json(const json& j, bool enforce_completeness) {
  return guarded("intervention", [&] {
    const int input_dim = j.at("input_dim").get<int>();
    std::vector<Outcome> outcomes;
    for (const json& o : j.at("outcomes")) {
      Outcome outcome;
      outcome.label = o.at("label").get<std::string>();
      outcome.output_dim = o.at("output_dim").get<int>();
      for (const json& a : o.at("kraus")) {
        outcome.kraus.push_back(matrix_from_json(a));
      }
      outcomes.push_back(std::move(outcome));
    }
    return enforce_completeness
               ? Intervention::validate(input_dim, std::move(outcomes))
               : Intervention::shape_only(input_dim, std::move(outcomes));
  });
}

json adaptive_to_json(const AdaptiveIntervention& a) {
  json branches = json::array();
  for (const auto& [on, k] : a.branches()) {
    branches.push_back(json{{"on", on},
                            {"intervention", intervention_to_json(k)}});
  }
  return json{{"branches", branches}};
}

AdaptiveIntervention adaptive_from_json(const json& j,
                                        bool enforce_completeness) {
  return guarded("adaptive intervention", [&] {
    std::vector<AdaptiveIntervention::Branch> branches;
    for (const json& b : j.at("branches")) {
      branches.emplace_back(
          b.at("on").get<std::string>(),
          intervention_from_json(b.at("intervention"), enforce_completeness));
    }
    return AdaptiveIntervention::make(std::move(branches));
  });
}

json dilation_to_json(const Dilation& d) {
  json columns = json::array();
  for (const DilationColumn& c : d.columns()) {
    columns.push_back(json{{"mu", c.mu}, {"sigma", c.sigma}, {"m", c.m}});
  }
  return json{{"input_dim", d.input_dim()},
              {"columns", columns},
              {"matrix", matrix_to_json(d.isometry())}};
}

Dilation dilation_from_json(const json& j) {
  return guarded("dilation", [&] {
    const int input_dim = j.at("input_dim").get<int>();
    std::vector<DilationColumn> columns;
    for (const json& c : j.at("columns")) {
      columns.push_back(DilationColumn{c.at("mu").get<std::string>(),
                                       c.at("sigma").get<int>(),
                                       c.at("m").get<int>()});
    }
    return Dilation::build(input_dim, std::move(columns),
                           matrix_from_json(j.at("matrix")));
  });
}

json composite_to_json(const CompositeState& c) {
  json columns = json::array();
  for (const DilationColumn& col : c.columns()) {
    columns.push_back(
        json{{"mu", col.mu}, {"sigma", col.sigma}, {"m", col.m}});
  }
  json amplitudes = json::array();
  for (Eigen::Index i = 0; i < c.amplitudes().size(); ++i) {
    amplitudes.push_back(complex_to_json(c.amplitudes()(i)));
  }
  json weights = json::array();
  for (const std::string& mu : c.block_labels()) {
    weights.push_back(json{{"mu", mu}, {"weight", c.block_weight(mu)}});
  }
  return json{{"columns", columns},
              {"amplitudes", amplitudes},
              {"block_weights", weights}};
}

CompositeState composite_from_json(const json& j) {
  return guarded("composite state", [&] {
    std::vector<DilationColumn> columns;
    for (const json& c : j.at("columns")) {
      columns.push_back(DilationColumn{c.at("mu").get<std::string>(),
                                       c.at("sigma").get<int>(),
                                       c.at("m").get<int>()});
    }
    const json& amplitudes = j.at("amplitudes");
    CVec v(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = complex_from_json(amplitudes[i]);
    }
    return CompositeState::build(std::move(columns), std::move(v));
  });
}

json generator_to_json(const LindbladGenerator& g) {
  json jumps = json::array();
  for (const CMat& v : g.jump_ops()) {
    jumps.push_back(matrix_to_json(v));
  }
  return json{{"dim", g.dim()},
              {"H0", matrix_to_json(g.h0())},
              {"jumps", jumps}};
}

LindbladGenerator generator_from_json(const json& j) {
  return guarded("generator", [&] {
    const int dim = j.at("dim").get<int>();
    CMat h0 = matrix_from_json(j.at("H0"));
    if (h0.rows() != dim) {
      fail(ErrorCode::DimMismatch, "H0 does not match the declared dimension");
    }
    std::vector<CMat> jumps;
    for (const json& v : j.at("jumps")) {
      jumps.push_back(matrix_from_json(v));
    }
    return LindbladGenerator::validate(std::move(h0), std::move(jumps));
  });
}

const char* file_kind_name(FileKind kind) {
  switch (kind) {
    case FileKind::Unknown: return "unknown";
    case FileKind::PureState: return "pure_state";
    case FileKind::DensityState: return "density_matrix";
    case FileKind::Povm: return "povm";
    case FileKind::Intervention: return "intervention";
    case FileKind::Adaptive: return "adaptive_intervention";
    case FileKind::Dilation: return "dilation";
    case FileKind::Composite: return "composite_state";
    case FileKind::Generator: return "generator";
    case FileKind::Scenario: return "scenario";
  }
  return "unknown";
}

FileKind detect_file_kind(const json& j) {
  if (!j.is_object()) return FileKind::Unknown;
  if (j.contains("stages")) return FileKind::Scenario;
  if (j.contains("outcomes")) return FileKind::Intervention;
  if (j.contains("elements")) return FileKind::Povm;
  if (j.contains("branches")) return FileKind::Adaptive;
  if (j.contains("H0") || j.contains("jumps")) return FileKind::Generator;
  if (j.contains("columns") && j.contains("matrix")) return FileKind::Dilation;
  if (j.contains("columns") && j.contains("amplitudes")) {
    return FileKind::Composite;
  }
  if (j.contains("amplitudes")) return FileKind::PureState;
  if (j.contains("matrix")) return FileKind::DensityState;
  return FileKind::Unknown;
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    fail(ErrorCode::Parse, "malformed JSON");
  }
  return j;
}

FileKind validate_text(const std::string& text) {
  const json j = parse_text(text);
  const FileKind kind = detect_file_kind(j);
  switch (kind) {
    case FileKind::PureState: pure_from_json(j); break;
    case FileKind::DensityState: density_from_json(j); break;
    case FileKind::Povm: povm_from_json(j); break;
    case FileKind::Intervention: intervention_from_json(j); break;
    case FileKind::Adaptive: adaptive_from_json(j); break;
    case FileKind::Dilation: dilation_from_json(j); break;
    case FileKind::Composite: composite_from_json(j); break;
    case FileKind::Generator: generator_from_json(j); break;
    case FileKind::Scenario: scenario_from_json(j); break;
    case FileKind::Unknown:
      fail(ErrorCode::Parse, "unrecognized file kind");
  }
  return kind;
}

}  // namespace qiv
