// Payload shapes of the backend JSON API (docs/api.md).  The UI never
// computes algebra: every displayed polynomial is a server string verbatim.
export {};
