#include "kolam/service.hpp"

#include "kolam/engine.hpp"

#include <httplib.h>

namespace kolam {

struct Service::Impl {
    httplib::Server server;
};

Service::Service(std::string static_dir) : impl_(std::make_unique<Impl>()) {
    auto handle = [](const httplib::Request& req, httplib::Response& res) {
        const engine::Response r = engine::dispatch(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    impl_->server.Get("/v1/.*", handle);
    impl_->server.Post("/v1/.*", handle);
    if (!static_dir.empty()) impl_->server.set_mount_point("/", static_dir);
}

Service::~Service() { stop(); }

bool Service::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int Service::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool Service::serve() { return impl_->server.listen_after_bind(); }

void Service::stop() {
    if (impl_) impl_->server.stop();
}

bool Service::running() const { return impl_->server.is_running(); }

}  // namespace kolam
