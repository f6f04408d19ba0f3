#ifndef QML_JSON_IO_HPP
#define QML_JSON_IO_HPP

#include "qml/engine.hpp"
#include "qml/moments.hpp"
#include "qml/quotient.hpp"

#include "json.hpp"

namespace qml {

using OrderedJson = nlohmann::ordered_json;

// Reports render rationals as exact "p/q" strings and keep stable key order,
// so identical inputs produce byte-identical JSON.

OrderedJson moment_seq_to_json(const MomentSeq& seq);
MomentSeq moment_seq_from_json(const OrderedJson& json);

OrderedJson hankel_report_to_json(const HankelReport& report);
HankelReport hankel_report_from_json(const OrderedJson& json);

OrderedJson measure_to_json(const MeasureFamily& measure);
MeasureFamily measure_from_json(const OrderedJson& json);

OrderedJson verdict_to_json(const Verdict& verdict);
Verdict verdict_from_json(const OrderedJson& json);

OrderedJson bimoments_to_json(const Bimoments& grid);

OrderedJson basis_to_json(const std::vector<QuotientBasisElement>& basis);
std::vector<QuotientBasisElement> basis_from_json(const OrderedJson& json);

OrderedJson shift_model_to_json(const WeightedShiftModel& model);

OrderedJson matrices_to_json(const TruncatedQuotient& tq);

}  // namespace qml

#endif
