export const SAMPLES: Record<string, string> = {
  "eps-nash": [
    "schema_version,eps,game_id,proportion",
    "eps-nash/1,0.0,0,0.125",
    "eps-nash/1,0.5,0,0.25",
    "eps-nash/1,1.0,0,0.5",
    "eps-nash/1,0.0,1,0.25",
    "eps-nash/1,0.5,1,0.5",
    "eps-nash/1,1.0,1,1.0",
  ].join("\n"),
  "welfare-error": [
    "schema_version,rho,mean_sup_error",
    "welfare-error/1,-2.0,0.31",
    "welfare-error/1,-1.0,0.22",
    "welfare-error/1,0.5,0.45",
    "welfare-error/1,1.0,0.12",
    "welfare-error/1,2.0,0.08",
  ].join("\n"),
  "variance-pruning": [
    "schema_version,regime,samples,active_proportion,lower_bound,upper_bound",
    '"variance-pruning/1","beta(0.5,3)",10,1.0,0.2,1.0',
    '"variance-pruning/1","beta(0.5,3)",100,0.4,0.1,0.8',
    '"variance-pruning/1","beta(0.5,3)",1000,0.0,0.0,0.2',
    '"variance-pruning/1","beta(5,0.5)",10,1.0,0.6,1.0',
    '"variance-pruning/1","beta(5,0.5)",100,0.9,0.5,1.0',
    '"variance-pruning/1","beta(5,0.5)",1000,0.1,0.0,0.4',
  ].join("\n"),
  "psp-vs-gs": [
    "schema_version,algorithm,target_or_m,eps_achieved,data,queries",
    "psp-vs-gs/1,psp,1.0,0.82,400,120000",
    "psp-vs-gs/1,psp,1.0,0.91,380,110000",
    "psp-vs-gs/1,gs,1.0,0.95,600,250000",
    "psp-vs-gs/1,gs,1.0,0.88,600,250000",
  ].join("\n"),
  "anarchy-gap": [
    "schema_version,Lambda,noise_model,draw_id,ag_value,theory_lower,theory_upper",
    "anarchy-gap/1,0.0,uniform,0,2.1,1.5,3.0",
    "anarchy-gap/1,0.0,uniform,1,2.4,1.5,3.0",
    "anarchy-gap/1,2.0,uniform,0,3.2,2.0,4.5",
    "anarchy-gap/1,2.0,parabolic,0,3.0,2.0,4.5",
    "anarchy-gap/1,2.0,parabolic,1,3.6,2.0,4.5",
  ].join("\n"),
  coverage: [
    "schema_version,trial_block,success_rate,delta",
    "coverage/1,block-0,0.97,0.05",
    "coverage/1,block-1,0.99,0.05",
    "coverage/1,block-2,0.96,0.05",
    "coverage/1,block-3,1.0,0.05",
  ].join("\n"),
};
