#include "lifespan/reference.hpp"

#include "lifespan/model.hpp"

namespace lifespan {

const std::vector<LanguageStatsRow>& reference_language_table() {
    static const std::vector<LanguageStatsRow> table = {
        {"Java", 145.6598, 25, 63, 182, 1},
        {"C#", 154.2792, 26, 72, 195, 1},
        {"JavaScript", 160.0089, 23, 79, 128, 1},
        {"Objective-C", 167.9306, 24, 67, 213, 1},
        {"C++", 169.6528, 28, 76, 215, 1},
        {"PHP", 182.7401, 32, 93, 250, 1},
        {"C", 206.0435, 31, 90, 273, 1},
        {"Python", 210.2633, 34, 105, 289, 1},
        {"Ruby", 213.5365, 27, 81, 272, 1},
        {"Shell", 237.9406, 45, 137, 300, 1},
        {"Perl", 343.0235, 58, 211, 526, 1},
    };
    return table;
}

const std::vector<LabelStatsRow>& reference_label_table() {
    static const std::vector<LabelStatsRow> table = {
        {"editor", 577.0, 1},        {"Linux", 551.1, 1},
        {"Compatibility", 521.7, 1}, {"optimization", 503.5, 1},
        {"template", 493.4, 1},      {"Windows", 474.9, 1},
        {"Website", 463.9, 1},       {"security", 413.9, 1},
        {"enhancements", 395.0, 1},  {"Mobile", 389.0, 1},
        {"API", 370.6, 1},           {"Database", 355.8, 1},
        {"plugin", 318.5, 1},        {"server", 299.5, 1},
        {"model", 297.0, 1},         {"IOS", 260.5, 1},
        {"build", 259.1, 1},         {"architecture", 252.3, 1},
        {"web", 241.4, 1},           {"bug", 212.5, 1},
        {"Maps", 172.5, 1},          {"data IO", 126.0, 1},
        {"back end", 124.5, 1},      {"J2ME", 70.0, 1},
        {"HTML 5", 70.0, 1},         {"bootstrap", 60.0, 1},
    };
    return table;
}

ModelParams default_model_params() {
    ModelParams p;
    p.alpha = kDefaultAlpha;
    p.beta = kDefaultBeta;
    p.baseline = kDefaultBaselineLanguage;
    p.language_factors = derive_language_factors(reference_language_table(), p.baseline);
    p.label_offsets =
        derive_label_offsets(reference_label_table(), kReferenceGlobalMeanLifespan);
    p.global_mean_lifespan = kReferenceGlobalMeanLifespan;
    return p;
}

}  // namespace lifespan
