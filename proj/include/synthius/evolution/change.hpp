#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "synthius/common.hpp"
#include "synthius/persona/fact.hpp"

namespace synthius {

struct AddOp {
    DomainFact fact;
};

// Top-level field patch on the fact's JSON form; prior holds the replaced
// values so the exact inverse is derivable.
struct EditOp {
    std::string fact_id;
    json patch;
    json prior;
};

struct DeleteOp {
    std::string fact_id;
    DomainFact prior;
};

using ChangeOp = std::variant<AddOp, EditOp, DeleteOp>;

enum class ChangeKind { update, rollback };

struct ChangeSet {
    std::string id;
    std::int64_t base_version = 0;
    std::vector<ChangeOp> ops;
    std::string timestamp;
    ChangeKind kind = ChangeKind::update;
    std::int64_t rollback_target = -1;  // meaningful when kind == rollback

    bool empty() const { return ops.empty(); }
};

inline ChangeOp invert(const ChangeOp& op) {
    if (const auto* add = std::get_if<AddOp>(&op))
        return DeleteOp{core(add->fact).fact_id, add->fact};
    if (const auto* edit = std::get_if<EditOp>(&op))
        return EditOp{edit->fact_id, edit->prior, edit->patch};
    const auto& del = std::get<DeleteOp>(op);
    return AddOp{del.prior};
}

inline json to_json(const ChangeOp& op) {
    if (const auto* add = std::get_if<AddOp>(&op))
        return {{"op", "add"}, {"fact", to_json(add->fact)}};
    if (const auto* edit = std::get_if<EditOp>(&op))
        return {{"op", "edit"}, {"fact_id", edit->fact_id}, {"patch", edit->patch}, {"prior", edit->prior}};
    const auto& del = std::get<DeleteOp>(op);
    return {{"op", "delete"}, {"fact_id", del.fact_id}, {"prior", to_json(del.prior)}};
}

inline ChangeOp change_op_from_json(const json& j) {
    const std::string op = j.value("op", "");
    if (op == "add") return AddOp{fact_from_json(j.at("fact"))};
    if (op == "edit") return EditOp{j.at("fact_id").get<std::string>(), j.at("patch"), j.at("prior")};
    if (op == "delete") return DeleteOp{j.at("fact_id").get<std::string>(), fact_from_json(j.at("prior"))};
    fail(ErrorKind::parse, "unknown change op '" + op + "'");
}

inline json to_json(const ChangeSet& cs) {
    json ops = json::array();
    for (const auto& op : cs.ops) ops.push_back(to_json(op));
    return {{"id", cs.id},
            {"base_version", cs.base_version},
            {"ops", ops},
            {"timestamp", cs.timestamp},
            {"kind", cs.kind == ChangeKind::rollback ? "rollback" : "update"},
            {"rollback_target", cs.rollback_target}};
}

inline ChangeSet changeset_from_json(const json& j) {
    ChangeSet cs;
    cs.id = j.value("id", "");
    cs.base_version = j.value("base_version", std::int64_t{0});
    if (j.contains("ops"))
        for (const auto& op : j.at("ops")) cs.ops.push_back(change_op_from_json(op));
    cs.timestamp = j.value("timestamp", "");
    cs.kind = j.value("kind", std::string("update")) == "rollback" ? ChangeKind::rollback
                                                                   : ChangeKind::update;
    cs.rollback_target = j.value("rollback_target", std::int64_t{-1});
    return cs;
}

}  // namespace synthius
