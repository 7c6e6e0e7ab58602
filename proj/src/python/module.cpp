#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "cpccms/cpc.hpp"
#include "cpccms/decision.hpp"
#include "cpccms/error.hpp"
#include "cpccms/metrics.hpp"
#include "cpccms/text.hpp"

namespace py = pybind11;
using namespace cpccms;

namespace {

cpc::PairwiseOppositeMatrix make_pom(std::vector<std::string> criteria,
                                     std::vector<std::vector<double>> entries, double kappa) {
  cpc::PairwiseOppositeMatrix pom(std::move(criteria), kappa, std::move(entries));
  cpc::require_valid(pom);
  return pom;
}

py::dict weights_dict(const cpc::WeightReport& r) {
  py::dict out;
  out["criteria"] = r.weights.criteria;
  out["utilities"] = r.utilities.values;
  out["weights"] = r.weights.weights;
  out["ranks"] = r.ranks;
  out["accordance_index"] = r.accordance.ai;
  out["verdict"] = std::string(cpc::to_string(r.accordance.verdict));
  out["warnings"] = r.warnings;
  return out;
}

std::optional<metrics::TimingSet> to_timings(const std::optional<std::map<std::string, double>>& t,
                                             const std::vector<std::string>& order) {
  if (!t) return std::nullopt;
  std::vector<metrics::Timing> rows;
  for (const auto& model : order) {
    const auto it = t->find(model);
    if (it == t->end()) throw InputError("no timing for model '" + model + "'");
    rows.push_back({model, it->second});
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pairwise-comparison weighting and model ranking";

  // InputError derives from std::invalid_argument, which pybind11 already
  // maps to ValueError; conflicts surface as RuntimeError.
  py::register_exception<ConflictError>(m, "ConflictError", PyExc_RuntimeError);

  m.def(
      "derive_weights",
      [](std::vector<std::string> criteria, std::vector<std::vector<double>> entries, double kappa) {
        return weights_dict(cpc::derive_weights(make_pom(std::move(criteria), std::move(entries), kappa)));
      },
      py::arg("criteria"), py::arg("entries"), py::arg("kappa") = cpc::kDefaultKappa);

  m.def(
      "accordance_index",
      [](std::vector<std::vector<double>> entries, double kappa) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < entries.size(); ++i) names.push_back("c" + std::to_string(i));
        return cpc::accordance_index(make_pom(std::move(names), std::move(entries), kappa));
      },
      py::arg("entries"), py::arg("kappa") = cpc::kDefaultKappa);

  m.def(
      "rank_models",
      [](std::vector<std::string> criteria, std::vector<std::vector<double>> entries,
         std::vector<std::string> models, std::vector<std::string> score_criteria,
         std::vector<std::vector<double>> scores, std::optional<std::map<std::string, double>> timings,
         bool include_efficiency, double kappa) {
        const auto pom = make_pom(std::move(criteria), std::move(entries), kappa);
        const decision::DecisionMatrix matrix(models, std::move(score_criteria), std::move(scores));
        const auto eval = decision::evaluate(pom, matrix, to_timings(timings, models), include_efficiency);
        py::list results;
        for (const auto& e : eval.ranking.entries) {
          py::dict row;
          row["model"] = e.model;
          row["score"] = e.score;
          row["rank"] = e.rank;
          results.append(row);
        }
        py::dict out = weights_dict(eval.weights);
        out["results"] = results;
        out["best"] = eval.ranking.best;
        return out;
      },
      py::arg("criteria"), py::arg("entries"), py::arg("models"), py::arg("score_criteria"), py::arg("scores"),
      py::arg("timings") = py::none(), py::arg("include_efficiency") = false,
      py::arg("kappa") = cpc::kDefaultKappa);

  m.def(
      "criterion_scores",
      [](const std::vector<std::string>& truth, const std::vector<std::string>& predicted,
         std::vector<std::string> classes) {
        const auto s = metrics::criterion_scores(metrics::confusion_from_labels(truth, predicted, std::move(classes)));
        py::dict out;
        const auto values = s.values();
        for (std::size_t i = 0; i < values.size(); ++i) out[py::str(metrics::CriterionScores::names()[i])] = values[i];
        return out;
      },
      py::arg("truth"), py::arg("predicted"), py::arg("classes"));

  m.def(
      "clean", [](const std::string& raw, bool keep_punctuation) { return text::clean(raw, keep_punctuation).text; },
      py::arg("raw"), py::arg("keep_punctuation") = false);
  m.def("tokenize", [](const std::string& s) { return text::tokenize(s); });
  m.def("porter_stem", [](const std::string& s) { return text::porter_stem(s); });
}
