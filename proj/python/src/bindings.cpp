#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "starlab/classifiers.hpp"
#include "starlab/cli.hpp"
#include "starlab/corpus.hpp"
#include "starlab/dsl.hpp"
#include "starlab/error.hpp"
#include "starlab/projections.hpp"
#include "starlab/ring_builder.hpp"
#include "starlab/scalar_algebra.hpp"
#include "starlab/unitification.hpp"

namespace py = pybind11;
using namespace starlab;

namespace {

// Values cross the boundary as JSON text; the package decodes them.
class Ring {
 public:
  Ring(const std::string& expr, std::size_t max_order)
      : descriptor_(parse_ring_expr(expr)), classifier_(build(descriptor_, max_order)) {}

  std::string text() const { return to_string(descriptor_); }
  std::size_t order() const { return ring().order(); }
  std::uint64_t char_() const { return characteristic(ring()); }
  std::string unity() const {
    const auto u = ring().unity();
    return u ? to_json(ring().literal(*u)).dump() : "null";
  }

  std::string rp(const std::string& x) { return value(analysis().rp(at(x))); }
  std::string lp(const std::string& x) { return value(analysis().lp(at(x))); }
  std::string cover(const std::string& x) { return value(analysis().central_cover(at(x))); }

  std::string projections() {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : analysis().poset().items()) {
      out.push_back({{"element", to_json(ring().literal(p.element))}, {"central", p.central}});
    }
    return out.dump();
  }

  std::string check(const std::string& property) { return to_json(classifier_.run(property)).dump(); }

 private:
  static StarRing build(const RingDescriptor& d, std::size_t max_order) {
    Limits limits;
    limits.max_order = max_order;
    return build_ring(d, limits);
  }
  const StarRing& ring() const { return classifier_.ring(); }
  ProjectionAnalysis& analysis() { return classifier_.projection_analysis(); }
  Index at(const std::string& literal) const { return ring().index_of(parse_element_literal(literal)); }
  std::string value(Index e) const { return to_json(ring().literal(e)).dump(); }

  RingDescriptor descriptor_;
  Classifier classifier_;
};

std::string unitify(const std::string& r, const std::string& k, const std::string& mode, std::size_t max_order) {
  ScanOptions opts;
  opts.limits.max_order = max_order;
  const auto alg = build_scalar_algebra(build_ring(parse_ring_expr(r), opts.limits),
                                        build_ring(parse_ring_expr(k), opts.limits), NaturalAction{});
  if (mode == "none") {
    const QuotientRing q = build_quotient(alg, opts);
    const auto inj = embedding_injectivity(alg, q);
    return nlohmann::json{{"kernel_order", q.kernel.order()},
                          {"quotient_order", q.ring.order()},
                          {"injective", inj.injective},
                          {"involution", std::string(to_string(q.involution_source))}}
        .dump();
  }
  if (mode != "rickart" && mode != "pqbaer") throw Error(ErrorCode::InvalidDescriptor, "mode is rickart, pqbaer or none");
  const auto m = mode == "rickart" ? UnitificationMode::Rickart : UnitificationMode::PqBaer;
  return to_json(verify_unitification(alg, m, opts)).dump();
}

py::tuple cli(const std::vector<std::string>& args) {
  std::vector<std::string> full{"starlab"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_starlab, m) {
  m.doc() = "Finite rings with involution";

  py::register_exception<Error>(m, "StarlabError", PyExc_ValueError);

  py::class_<Ring>(m, "Ring")
      .def(py::init<const std::string&, std::size_t>(), py::arg("expr"), py::arg("max_order") = Limits{}.max_order)
      .def("text", &Ring::text)
      .def("order", &Ring::order)
      .def("characteristic", &Ring::char_)
      .def("unity", &Ring::unity)
      .def("rp", &Ring::rp)
      .def("lp", &Ring::lp)
      .def("cover", &Ring::cover)
      .def("projections", &Ring::projections)
      .def("check", &Ring::check);

  m.def("unitify", &unitify, py::arg("ring"), py::arg("scalars"), py::arg("mode") = "rickart",
        py::arg("max_order") = Limits{}.max_order);
  m.def("corpus", [](const std::string& profile) {
    std::vector<std::string> out;
    for (const auto& d : generate_corpus(profile)) out.push_back(to_string(d));
    return out;
  });
  m.def("cli", &cli);
}
