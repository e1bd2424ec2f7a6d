#pragma once

#include <string>
#include <variant>

#include "simpla/json_io.hpp"

// Loaders for the checked-in example models under data/.

inline std::string data_path(const std::string& name) {
    return std::string(SIMPLA_DATA_DIR) + "/" + name;
}

inline simpla::SimplicialModel load_simplicial(const std::string& name) {
    return std::get<simpla::SimplicialModel>(simpla::load_model(data_path(name)));
}

inline simpla::KripkeModel load_kripke(const std::string& name) {
    return std::get<simpla::KripkeModel>(simpla::load_model(data_path(name)));
}
