#ifndef ESD_COMMON_JSONIO_HPP
#define ESD_COMMON_JSONIO_HPP

#include <json.hpp>
#include <string>

namespace esd {

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

} // namespace esd

#endif
