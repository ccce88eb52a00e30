#pragma once

#include "synthius/evolution/engine.hpp"
#include "synthius/extraction/port.hpp"
#include "synthius/persona/store.hpp"

namespace synthius {

// Turn a raw extraction into a clean store: a fresh store plus one ChangeSet
// carrying the consolidated facts, so the changelog stays the source of truth
// from version zero.
inline PersonaStore consolidate_store(const RawExtraction& raw, const std::string& timestamp = "") {
    PersonaStore store(raw.person_id.empty() ? "unknown" : raw.person_id);
    ChangeSet cs = propose_diff(store, raw.facts, timestamp);
    if (!cs.empty()) apply(store, cs);
    return store;
}

}  // namespace synthius
