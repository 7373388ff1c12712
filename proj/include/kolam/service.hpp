#pragma once

#include <memory>
#include <string>

namespace kolam {

// Stateless HTTP front end over engine::dispatch. Optionally serves a
// static directory (the designer) at "/".
class Service {
public:
    explicit Service(std::string static_dir = "");
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    // Blocks until stop().
    bool listen(const std::string& host, int port);
    // Binds an ephemeral port and returns it; call serve() afterwards.
    int bind_any_port(const std::string& host);
    bool serve();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace kolam
