#include "ragmark/model.hpp"

#include "ragmark/errors.hpp"

namespace ragmark {

std::string_view to_string(Label label) {
    return label == Label::Positive ? "positive" : "negative";
}

Label label_from_string(std::string_view text) {
    if (text == "positive") return Label::Positive;
    if (text == "negative") return Label::Negative;
    throw ParseError("unknown label \"" + std::string(text) + "\" (expected positive|negative)");
}

std::string_view to_string(VerdictLabel label) {
    switch (label) {
        case VerdictLabel::Positive: return "positive";
        case VerdictLabel::Negative: return "negative";
        case VerdictLabel::Unknown: break;
    }
    return "unknown";
}

VerdictLabel verdict_label_from_string(std::string_view text) {
    if (text == "positive") return VerdictLabel::Positive;
    if (text == "negative") return VerdictLabel::Negative;
    if (text == "unknown") return VerdictLabel::Unknown;
    throw ParseError("unknown verdict label \"" + std::string(text) + "\"");
}

const PropertyScore* EvaluationRecord::find_score(std::string_view property_id) const {
    for (const auto& score : scores) {
        if (score.property_id == property_id) return &score;
    }
    return nullptr;
}

}  // namespace ragmark
