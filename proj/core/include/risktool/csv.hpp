#ifndef RISKTOOL_CSV_HPP
#define RISKTOOL_CSV_HPP

#include <string>
#include <vector>

#include "risktool/learners.hpp"

namespace risktool {

struct LossRecord {
    double loss = 0.0;
    std::string group;
};

// Loss files: header `loss` or `loss,group`, one record per line, scientific
// notation accepted. Parse failures throw InputError naming the line.
std::vector<LossRecord> read_loss_csv(const std::string& path);

// Dataset files: header `f1,...,fd,label` with an optional trailing `group`.
Dataset read_dataset_csv(const std::string& path);

} // namespace risktool

#endif
