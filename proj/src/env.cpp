#include "webtraj/env.hpp"

#include <deque>
#include <set>

#include "webtraj/io.hpp"

namespace webtraj {

Affordance affordance_from_string(std::string_view s) {
    if (s == "clickable") return Affordance::clickable;
    if (s == "typable") return Affordance::typable;
    if (s == "static") return Affordance::static_text;
    throw Error("unknown affordance: " + std::string(s));
}

std::string to_string(Affordance a) {
    switch (a) {
        case Affordance::clickable: return "clickable";
        case Affordance::typable: return "typable";
        case Affordance::static_text: return "static";
    }
    return "static";
}

void SiteSpec::validate() const {
    if (!pages.count(start_page))
        throw UnknownSite("site '" + site_id + "': start page '" + start_page + "' is not defined");
    for (const auto& tr : transitions) {
        auto from_it = pages.find(tr.from);
        if (from_it == pages.end())
            throw UnknownSite("site '" + site_id + "': transition from unknown page '" + tr.from + "'");
        if (!pages.count(tr.to))
            throw UnknownSite("site '" + site_id + "': transition to unknown page '" + tr.to + "'");
        if (tr.pattern.kind == ActionPattern::Kind::click || tr.pattern.kind == ActionPattern::Kind::type) {
            auto el = from_it->second.elements.find(tr.pattern.element_id);
            if (el == from_it->second.elements.end())
                throw UnknownSite("site '" + site_id + "': page '" + tr.from + "' has no element " +
                                  std::to_string(tr.pattern.element_id));
            const bool ok = (tr.pattern.kind == ActionPattern::Kind::click && el->second == Affordance::clickable) ||
                            (tr.pattern.kind == ActionPattern::Kind::type && el->second == Affordance::typable);
            if (!ok)
                throw UnknownSite("site '" + site_id + "': element " + std::to_string(tr.pattern.element_id) +
                                  " on page '" + tr.from + "' has incompatible affordance");
        }
    }
}

SiteSpec site_from_json(const nlohmann::json& j) {
    SiteSpec site;
    site.site_id = j.at("site_id").get<std::string>();
    site.start_page = j.at("start_page").get<std::string>();
    for (const auto& [page_id, pj] : j.at("pages").items()) {
        PageSpec page;
        page.tree_text = pj.at("tree_text").get<std::string>();
        if (pj.contains("elements"))
            for (const auto& [id, aff] : pj.at("elements").items())
                page.elements[std::stoi(id)] = affordance_from_string(aff.get<std::string>());
        site.pages[page_id] = std::move(page);
    }
    if (j.contains("transitions")) {
        for (const auto& tj : j.at("transitions")) {
            SiteSpec::Transition tr;
            tr.from = tj.at("from").get<std::string>();
            tr.to = tj.at("to").get<std::string>();
            const auto& aj = tj.at("action");
            const std::string kind = aj.at("kind").get<std::string>();
            if (kind == "click") {
                tr.pattern.kind = ActionPattern::Kind::click;
                tr.pattern.element_id = aj.at("element_id").get<int>();
            } else if (kind == "type") {
                tr.pattern.kind = ActionPattern::Kind::type;
                tr.pattern.element_id = aj.at("element_id").get<int>();
                tr.pattern.content_pattern = aj.value("content_pattern", "*");
            } else if (kind == "scroll") {
                tr.pattern.kind = ActionPattern::Kind::scroll;
                const std::string dir = aj.at("direction").get<std::string>();
                tr.pattern.direction = dir == "down" ? ScrollDirection::down : ScrollDirection::up;
            } else {
                throw Error("unknown transition action kind: " + kind);
            }
            site.transitions.push_back(std::move(tr));
        }
    }
    if (j.contains("success")) {
        for (const auto& [query_id, sj] : j.at("success").items()) {
            SuccessPredicate pred;
            if (sj.contains("final_page")) pred.final_page = sj.at("final_page").get<std::string>();
            if (sj.contains("answer_contains")) pred.answer_contains = sj.at("answer_contains").get<std::string>();
            if (sj.contains("answer_equals")) pred.answer_equals = sj.at("answer_equals").get<std::string>();
            site.success[query_id] = std::move(pred);
        }
    }
    return site;
}

nlohmann::ordered_json site_to_json(const SiteSpec& site) {
    nlohmann::ordered_json j;
    j["site_id"] = site.site_id;
    j["start_page"] = site.start_page;
    j["pages"] = nlohmann::ordered_json::object();
    for (const auto& [page_id, page] : site.pages) {
        nlohmann::ordered_json pj;
        pj["tree_text"] = page.tree_text;
        pj["elements"] = nlohmann::ordered_json::object();
        for (const auto& [id, aff] : page.elements) pj["elements"][std::to_string(id)] = to_string(aff);
        j["pages"][page_id] = std::move(pj);
    }
    j["transitions"] = nlohmann::ordered_json::array();
    for (const auto& tr : site.transitions) {
        nlohmann::ordered_json tj;
        tj["from"] = tr.from;
        nlohmann::ordered_json aj;
        switch (tr.pattern.kind) {
            case ActionPattern::Kind::click:
                aj["kind"] = "click";
                aj["element_id"] = tr.pattern.element_id;
                break;
            case ActionPattern::Kind::type:
                aj["kind"] = "type";
                aj["element_id"] = tr.pattern.element_id;
                aj["content_pattern"] = tr.pattern.content_pattern;
                break;
            case ActionPattern::Kind::scroll:
                aj["kind"] = "scroll";
                aj["direction"] = tr.pattern.direction == ScrollDirection::down ? "down" : "up";
                break;
        }
        tj["action"] = std::move(aj);
        tj["to"] = tr.to;
        j["transitions"].push_back(std::move(tj));
    }
    j["success"] = nlohmann::ordered_json::object();
    for (const auto& [query_id, pred] : site.success) {
        nlohmann::ordered_json sj = nlohmann::ordered_json::object();
        if (pred.final_page) sj["final_page"] = *pred.final_page;
        if (pred.answer_contains) sj["answer_contains"] = *pred.answer_contains;
        if (pred.answer_equals) sj["answer_equals"] = *pred.answer_equals;
        j["success"][query_id] = std::move(sj);
    }
    return j;
}

SiteSpec load_site(const std::filesystem::path& path) {
    SiteSpec site = site_from_json(read_json(path));
    site.validate();
    return site;
}

Observation observe(const SiteSpec& site, const std::string& page_id) {
    auto it = site.pages.find(page_id);
    if (it == site.pages.end()) throw UnknownSite("site '" + site.site_id + "': unknown page '" + page_id + "'");
    return Observation::from_text(it->second.tree_text);
}

std::pair<EnvState, Observation> reset(const SiteSpec& site, const QueryRecord& q) {
    site.validate();
    (void)q;
    EnvState state;
    state.site_id = site.site_id;
    state.current_page = site.start_page;
    return {state, observe(site, site.start_page)};
}

namespace {

Observation observe_with_banner(const SiteSpec& site, const std::string& page_id, const std::string& banner) {
    Observation base = observe(site, page_id);
    return Observation::from_text(base.tree_text + "\n" + banner);
}

const SiteSpec::Transition* find_transition(const SiteSpec& site, const std::string& page, const Action& action) {
    const SiteSpec::Transition* wildcard = nullptr;
    for (const auto& tr : site.transitions) {
        if (tr.from != page) continue;
        if (const auto* click = std::get_if<Click>(&action)) {
            if (tr.pattern.kind == ActionPattern::Kind::click && tr.pattern.element_id == click->element_id)
                return &tr;
        } else if (const auto* type = std::get_if<Type>(&action)) {
            if (tr.pattern.kind != ActionPattern::Kind::type || tr.pattern.element_id != type->element_id)
                continue;
            if (tr.pattern.content_pattern == type->content) return &tr;
            if (tr.pattern.content_pattern == "*" && !wildcard) wildcard = &tr;
        } else if (const auto* scroll = std::get_if<Scroll>(&action)) {
            if (tr.pattern.kind == ActionPattern::Kind::scroll && tr.pattern.direction == scroll->direction)
                return &tr;
        }
    }
    return wildcard;
}

}  // namespace

StepOutcome step(const SiteSpec& site, const EnvState& state, const Action& action) {
    EnvState next = state;
    next.step_count += 1;

    const auto& page = site.pages.at(state.current_page);

    auto banner_outcome = [&](std::string banner) {
        StepOutcome out;
        out.observation = observe_with_banner(site, state.current_page, banner);
        out.banner = std::move(banner);
        out.state = std::move(next);
        return out;
    };
    auto clean_outcome = [&]() {
        StepOutcome out;
        out.observation = observe(site, next.current_page);
        out.state = std::move(next);
        return out;
    };

    if (std::holds_alternative<Click>(action) || std::holds_alternative<Type>(action)) {
        const int id = std::holds_alternative<Click>(action) ? std::get<Click>(action).element_id
                                                             : std::get<Type>(action).element_id;
        if (!page.elements.count(id)) {
            int max_id = 0;
            for (const auto& [eid, _] : page.elements) max_id = std::max(max_id, eid);
            return banner_outcome("[Execution error] no element with id " + std::to_string(id) +
                                  " on this page (maximum element id: " + std::to_string(max_id) + ")");
        }
        const auto* tr = find_transition(site, state.current_page, action);
        if (!tr)
            return banner_outcome("[Execution error] nothing happened; the element did not respond to this action");
        next.history.push_back(state.current_page);
        next.current_page = tr->to;
        return clean_outcome();
    }

    if (std::holds_alternative<Scroll>(action)) {
        // Scrolling records the departed view so goback can undo it; this keeps
        // rollback variants that scroll away recoverable with a single goback.
        next.history.push_back(state.current_page);
        if (const auto* tr = find_transition(site, state.current_page, action)) next.current_page = tr->to;
        return clean_outcome();
    }

    if (std::holds_alternative<GoBack>(action)) {
        if (next.history.empty())
            return banner_outcome("[Warning] no previous page to go back to");
        next.current_page = next.history.back();
        next.history.pop_back();
        return clean_outcome();
    }

    if (std::holds_alternative<Restart>(action)) {
        next.history.clear();
        next.current_page = site.start_page;
        return clean_outcome();
    }

    // Stop freezes the state.
    next = state;
    return clean_outcome();
}

bool is_success(const SiteSpec& site, const QueryRecord& q, const Trajectory& t) {
    auto it = site.success.find(q.query_id);
    if (it == site.success.end())
        throw UnknownQuery("site '" + site.site_id + "' defines no success predicate for query '" + q.query_id + "'");
    if (t.terminal != Terminal::stopped || t.steps.empty()) return false;

    const Step& last = t.steps.back();
    const auto* stop = std::get_if<Stop>(&last.action);
    if (!stop) return false;

    const SuccessPredicate& pred = it->second;
    if (pred.final_page) {
        auto page = page_for_observation(site, last.observation);
        if (!page || *page != *pred.final_page) return false;
    }
    if (pred.answer_equals && stop->answer != *pred.answer_equals) return false;
    if (pred.answer_contains && stop->answer.find(*pred.answer_contains) == std::string::npos) return false;
    return true;
}

std::optional<std::string> page_for_observation(const SiteSpec& site, const Observation& o) {
    for (const auto& [page_id, page] : site.pages)
        if (fingerprint_text(page.tree_text) == o.fingerprint) return page_id;
    return std::nullopt;
}

bool page_can_reach(const SiteSpec& site, const std::string& from, const std::string& target) {
    if (from == target) return true;
    std::set<std::string> seen{from};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
        std::string page = queue.front();
        queue.pop_front();
        for (const auto& tr : site.transitions) {
            if (tr.from != page || seen.count(tr.to)) continue;
            if (tr.to == target) return true;
            seen.insert(tr.to);
            queue.push_back(tr.to);
        }
    }
    return false;
}

}  // namespace webtraj
